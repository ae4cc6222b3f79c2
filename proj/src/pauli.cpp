#include "rydsim/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace rydsim {

namespace {

// Product of two single-site letters: returns the letter and the exponent of i.
std::pair<Pauli, int> letter_product(Pauli a, Pauli b) {
  if (a == Pauli::I) return {b, 0};
  if (b == Pauli::I) return {a, 0};
  if (a == b) return {Pauli::I, 0};
  const int ia = static_cast<int>(a);
  const int ib = static_cast<int>(b);
  const auto c = static_cast<Pauli>(ia ^ ib);
  // XY = iZ, YZ = iX, ZX = iY; reversed order picks up -i.
  const int cyclic = ((ib - ia) % 3 + 3) % 3;
  return {c, cyclic == 1 ? 1 : 3};
}

const cplx kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': case 'i': case '1': return Pauli::I;
    case 'X': case 'x': return Pauli::X;
    case 'Y': case 'y': return Pauli::Y;
    case 'Z': case 'z': return Pauli::Z;
    default: throw std::invalid_argument(std::string("unknown Pauli letter '") + c + "'");
  }
}

PauliString::PauliString(std::initializer_list<Factor> factors, int phase)
    : factors_(factors), phase_(phase) {
  normalize();
}

PauliString::PauliString(std::vector<Factor> factors, int phase)
    : factors_(std::move(factors)), phase_(phase) {
  normalize();
}

PauliString PauliString::uniform(std::span<const int> sites, Pauli letter, int phase) {
  std::vector<Factor> f;
  f.reserve(sites.size());
  for (int s : sites) f.push_back({s, letter});
  return PauliString(std::move(f), phase);
}

void PauliString::normalize() {
  phase_ = ((phase_ % 4) + 4) % 4;
  for (const auto& f : factors_) {
    if (f.site < 0) throw std::invalid_argument("PauliString: negative site index");
  }
  std::stable_sort(factors_.begin(), factors_.end(),
                   [](const Factor& a, const Factor& b) { return a.site < b.site; });
  // Repeated sites multiply left to right.
  std::vector<Factor> merged;
  merged.reserve(factors_.size());
  for (const auto& f : factors_) {
    if (!merged.empty() && merged.back().site == f.site) {
      auto [letter, k] = letter_product(merged.back().letter, f.letter);
      merged.back().letter = letter;
      phase_ = (phase_ + k) % 4;
    } else {
      merged.push_back(f);
    }
  }
  std::erase_if(merged, [](const Factor& f) { return f.letter == Pauli::I; });
  factors_ = std::move(merged);
}

PauliString PauliString::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string tok;
  if (!(in >> tok)) throw std::invalid_argument("PauliString::parse: empty input");
  int phase = 0;
  if (tok == "+1" || tok == "1") phase = 0;
  else if (tok == "+i" || tok == "i") phase = 1;
  else if (tok == "-1") phase = 2;
  else if (tok == "-i") phase = 3;
  else throw std::invalid_argument("PauliString::parse: bad phase token '" + tok + "'");
  std::vector<Factor> f;
  while (in >> tok) {
    if (tok.size() < 2) throw std::invalid_argument("PauliString::parse: bad token '" + tok + "'");
    const Pauli letter = pauli_from_char(tok[0]);
    std::size_t used = 0;
    int site = 0;
    try {
      site = std::stoi(tok.substr(1), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("PauliString::parse: bad site in '" + tok + "'");
    }
    if (used != tok.size() - 1) throw std::invalid_argument("PauliString::parse: bad token '" + tok + "'");
    f.push_back({site, letter});
  }
  return PauliString(std::move(f), phase);
}

cplx PauliString::phase_factor() const { return kPhases[phase_]; }

Pauli PauliString::at(int site) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), site,
                             [](const Factor& f, int s) { return f.site < s; });
  if (it != factors_.end() && it->site == site) return it->letter;
  return Pauli::I;
}

std::vector<int> PauliString::support() const {
  std::vector<int> s;
  s.reserve(factors_.size());
  for (const auto& f : factors_) s.push_back(f.site);
  return s;
}

PauliString PauliString::with_phase(int phase) const {
  PauliString r = *this;
  r.phase_ = ((phase % 4) + 4) % 4;
  return r;
}

PauliString PauliString::operator*(const PauliString& rhs) const {
  std::vector<Factor> out;
  out.reserve(factors_.size() + rhs.factors_.size());
  int phase = phase_ + rhs.phase_;
  auto a = factors_.begin();
  auto b = rhs.factors_.begin();
  while (a != factors_.end() || b != rhs.factors_.end()) {
    if (b == rhs.factors_.end() || (a != factors_.end() && a->site < b->site)) {
      out.push_back(*a++);
    } else if (a == factors_.end() || b->site < a->site) {
      out.push_back(*b++);
    } else {
      auto [letter, k] = letter_product(a->letter, b->letter);
      phase += k;
      if (letter != Pauli::I) out.push_back({a->site, letter});
      ++a;
      ++b;
    }
  }
  PauliString r;
  r.factors_ = std::move(out);
  r.phase_ = phase % 4;
  return r;
}

std::string PauliString::to_string() const {
  static const char* names[4] = {"+1", "+i", "-1", "-i"};
  std::string s = names[phase_];
  for (const auto& f : factors_) {
    s += ' ';
    s += pauli_char(f.letter);
    s += std::to_string(f.site);
  }
  return s;
}

std::uint64_t PauliString::x_mask() const {
  std::uint64_t m = 0;
  for (const auto& f : factors_) {
    if (f.site >= 64) throw std::out_of_range("PauliString: site beyond 64-bit mask");
    if (f.letter == Pauli::X || f.letter == Pauli::Y) m |= std::uint64_t{1} << f.site;
  }
  return m;
}

std::uint64_t PauliString::z_mask() const {
  std::uint64_t m = 0;
  for (const auto& f : factors_) {
    if (f.site >= 64) throw std::out_of_range("PauliString: site beyond 64-bit mask");
    if (f.letter == Pauli::Z || f.letter == Pauli::Y) m |= std::uint64_t{1} << f.site;
  }
  return m;
}

int PauliString::y_count() const {
  return static_cast<int>(std::count_if(factors_.begin(), factors_.end(),
                                        [](const Factor& f) { return f.letter == Pauli::Y; }));
}

PauliString multiply(const PauliString& a, const PauliString& b) { return a * b; }

bool commutes(const PauliString& a, const PauliString& b) {
  // Symplectic rule: count sites where both letters are non-identity and differ.
  int anti = 0;
  auto ia = a.factors().begin();
  auto ib = b.factors().begin();
  while (ia != a.factors().end() && ib != b.factors().end()) {
    if (ia->site < ib->site) {
      ++ia;
    } else if (ib->site < ia->site) {
      ++ib;
    } else {
      if (ia->letter != ib->letter) ++anti;
      ++ia;
      ++ib;
    }
  }
  return anti % 2 == 0;
}

bool OperatorSum::is_hermitian() const {
  for (const auto& t : terms) {
    if (!std::isfinite(t.coeff)) return false;
    if (!t.op.is_hermitian() && t.coeff != 0.0) return false;
  }
  return true;
}

double OperatorSum::magnitude() const {
  double m = 0.0;
  for (const auto& t : terms) m = std::max(m, std::abs(t.coeff));
  return m;
}

std::vector<int> OperatorSum::support() const {
  std::vector<int> s;
  for (const auto& t : terms) {
    auto ts = t.op.support();
    s.insert(s.end(), ts.begin(), ts.end());
  }
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

OperatorSum OperatorSum::simplified(double tol) const {
  // Key on the unsigned string; fold the phase (+1 / -1) into the coefficient.
  std::map<std::string, std::pair<PauliString, cplx>> acc;
  for (const auto& t : terms) {
    PauliString base = t.op.with_phase(0);
    auto key = base.to_string();
    auto [it, inserted] = acc.try_emplace(key, base, cplx{0, 0});
    it->second.second += t.coeff * t.op.phase_factor();
  }
  OperatorSum out;
  for (auto& [key, entry] : acc) {
    const cplx c = entry.second;
    if (std::abs(c) <= tol) continue;
    if (std::abs(c.imag()) <= tol) {
      out.add(c.real(), entry.first);
    } else if (std::abs(c.real()) <= tol) {
      out.add(c.imag(), entry.first.with_phase(1));
    } else {
      out.add(c.real(), entry.first);
      out.add(c.imag(), entry.first.with_phase(1));
    }
  }
  return out;
}

OperatorSum OperatorSum::scaled(double factor) const {
  OperatorSum out = *this;
  for (auto& t : out.terms) t.coeff *= factor;
  return out;
}

OperatorSum& OperatorSum::operator+=(const OperatorSum& rhs) {
  terms.insert(terms.end(), rhs.terms.begin(), rhs.terms.end());
  return *this;
}

OperatorSum operator+(OperatorSum a, const OperatorSum& b) {
  a += b;
  return a;
}

OperatorSum operator*(const OperatorSum& a, const OperatorSum& b) {
  OperatorSum out;
  out.terms.reserve(a.terms.size() * b.terms.size());
  for (const auto& ta : a.terms) {
    for (const auto& tb : b.terms) out.add(ta.coeff * tb.coeff, ta.op * tb.op);
  }
  return out;
}

namespace {

void check_size(int n, int cap) {
  if (n < 0) throw std::invalid_argument("to_matrix: negative qubit count");
  if (n > cap) {
    throw std::invalid_argument("to_matrix: " + std::to_string(n) + " qubits exceeds the oracle cap of " +
                                std::to_string(cap));
  }
}

// Accumulates coeff * op into m, where op has already been remapped to local
// qubits 0..n-1.
void accumulate(Eigen::MatrixXcd& m, const PauliString& op, cplx coeff) {
  const std::uint64_t xm = op.x_mask();
  const std::uint64_t zm = op.z_mask();
  const cplx pre = coeff * op.phase_factor() * kPhases[op.y_count() % 4];
  const auto dim = static_cast<std::uint64_t>(m.rows());
  for (std::uint64_t col = 0; col < dim; ++col) {
    const double sign = (std::popcount(col & zm) & 1) ? -1.0 : 1.0;
    m(static_cast<Eigen::Index>(col ^ xm), static_cast<Eigen::Index>(col)) += pre * sign;
  }
}

PauliString remap(const PauliString& op, std::span<const int> sites) {
  std::vector<PauliString::Factor> f;
  for (const auto& factor : op.factors()) {
    auto it = std::find(sites.begin(), sites.end(), factor.site);
    if (it == sites.end()) {
      throw std::invalid_argument("to_local_matrix: operator acts outside the given sites");
    }
    f.push_back({static_cast<int>(it - sites.begin()), factor.letter});
  }
  return PauliString(std::move(f), op.phase());
}

}  // namespace

Eigen::MatrixXcd to_matrix(const PauliString& op, int n, int cap) {
  check_size(n, cap);
  if (op.max_site() >= n) throw std::invalid_argument("to_matrix: operator acts beyond n qubits");
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  accumulate(m, op, 1.0);
  return m;
}

Eigen::MatrixXcd to_matrix(const OperatorSum& op, int n, int cap) {
  check_size(n, cap);
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : op.terms) {
    if (t.op.max_site() >= n) throw std::invalid_argument("to_matrix: operator acts beyond n qubits");
    accumulate(m, t.op, t.coeff);
  }
  return m;
}

Eigen::MatrixXcd to_local_matrix(const PauliString& op, std::span<const int> sites) {
  const int n = static_cast<int>(sites.size());
  return to_matrix(remap(op, sites), n);
}

Eigen::MatrixXcd to_local_matrix(const OperatorSum& op, std::span<const int> sites) {
  OperatorSum local;
  for (const auto& t : op.terms) local.add(t.coeff, remap(t.op, sites));
  return to_matrix(local, static_cast<int>(sites.size()));
}

OperatorSum parse_operator_sum(std::string_view text) {
  OperatorSum out;
  std::string rest(text);
  std::size_t start = 0;
  while (start <= rest.size()) {
    const auto end = std::min(rest.find(';', start), rest.size());
    const std::string term = rest.substr(start, end - start);
    start = end + 1;
    if (term.find_first_not_of(" \t") == std::string::npos) continue;
    const auto star = term.find('*');
    if (star == std::string::npos) throw std::invalid_argument("parse_operator_sum: expected coeff*string in '" + term + "'");
    double c = 0.0;
    try {
      c = std::stod(term.substr(0, star));
    } catch (const std::exception&) {
      throw std::invalid_argument("parse_operator_sum: bad coefficient in '" + term + "'");
    }
    out.add(c, PauliString::parse(term.substr(star + 1)));
  }
  return out;
}

std::string to_string(const OperatorSum& op) {
  std::string out;
  char buf[40];
  for (std::size_t k = 0; k < op.terms.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", op.terms[k].coeff);
    out += (k ? ";" : "") + std::string(buf) + "*" + op.terms[k].op.to_string();
  }
  return out;
}

}  // namespace rydsim
