#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "rydsim/pauli.hpp"

using namespace rydsim;

namespace {

std::string random_letters(std::mt19937& g, int n) {
  static const char kLetters[] = "IXYZ";
  std::string s;
  for (int k = 0; k < n; ++k) s += kLetters[g() % 4];
  return s;
}

PauliString from_letters(const std::string& s, int phase = 0) {
  std::vector<PauliString::Factor> f;
  for (int k = 0; k < static_cast<int>(s.size()); ++k)
    if (s[k] != 'I') f.push_back({k, pauli_from_char(s[k])});
  return PauliString(f, phase);
}

}  // namespace

TEST_CASE("pauli: matrix of a string matches the Kronecker product") {
  std::mt19937 g(11);
  for (int trial = 0; trial < 30; ++trial) {
    const std::string s = random_letters(g, 4);
    const int phase = static_cast<int>(g() % 4);
    const oracle::M ref = std::pow(oracle::c(0, 1), phase) * oracle::string_matrix(s);
    CHECK((to_matrix(from_letters(s, phase), 4) - ref).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("pauli: products and commutation agree with matrices") {
  std::mt19937 g(12);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = from_letters(random_letters(g, 3), static_cast<int>(g() % 4));
    const auto b = from_letters(random_letters(g, 3), static_cast<int>(g() % 4));
    const oracle::M ma = to_matrix(a, 3), mb = to_matrix(b, 3);
    CHECK((to_matrix(a * b, 3) - ma * mb).cwiseAbs().maxCoeff() < 1e-14);
    const bool comm = (ma * mb - mb * ma).cwiseAbs().maxCoeff() < 1e-12;
    CHECK(commutes(a, b) == comm);
  }
}

TEST_CASE("pauli: single-site identities") {
  const auto x = PauliString::single(0, Pauli::X);
  const auto y = PauliString::single(0, Pauli::Y);
  const auto z = PauliString::single(0, Pauli::Z);
  CHECK(x * y == z.with_phase(1));
  CHECK(y * z == x.with_phase(1));
  CHECK(z * x == y.with_phase(1));
  CHECK((x * x).is_identity());
  CHECK((x * x).phase() == 0);
  CHECK(!commutes(x, z));
  CHECK(commutes(PauliString::parse("+1 X0 X1"), PauliString::parse("+1 Z0 Z1")));
}

TEST_CASE("pauli: text round trip and parse errors") {
  for (const char* t : {"+1", "-i Y0 Z2", "+i X3 X7 Z12", "-1 Z1"}) CHECK(PauliString::parse(t).to_string() == t);
  CHECK(PauliString::parse("1 X1 X0").to_string() == "+1 X0 X1");
  CHECK_THROWS_AS(PauliString::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(PauliString::parse("+2 X0"), std::invalid_argument);
  CHECK_THROWS_AS(PauliString::parse("+1 Q0"), std::invalid_argument);
  CHECK_THROWS_AS(PauliString::parse("+1 X"), std::invalid_argument);
  CHECK_THROWS_AS(PauliString::parse("+1 X1a"), std::invalid_argument);
}

TEST_CASE("pauli: masks encode the string as phase i^#Y X^x Z^z") {
  const auto p = PauliString::parse("+1 X0 Y2 Z5");
  CHECK(p.x_mask() == 0b000101);
  CHECK(p.z_mask() == 0b100100);
  CHECK(p.y_count() == 1);
  CHECK(p.support() == std::vector<int>{0, 2, 5});
  CHECK(p.adjoint() == p);
  CHECK(PauliString::parse("+i X0").adjoint() == PauliString::parse("-i X0"));
}

TEST_CASE("pauli: operator sums") {
  OperatorSum h;
  h.add(0.5, PauliString::parse("+1 Z0 Z1"));
  h.add(0.25, PauliString::parse("-1 Z0 Z1"));
  h.add(1.0, PauliString::parse("+1 X1"));
  const auto s = h.simplified();
  REQUIRE(s.terms.size() == 2);
  CHECK(s.is_hermitian());
  CHECK((to_matrix(s, 2) - to_matrix(h, 2)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(h.magnitude() == doctest::Approx(1.0));

  const OperatorSum sq = h * h;
  CHECK((to_matrix(sq, 2) - to_matrix(h, 2) * to_matrix(h, 2)).cwiseAbs().maxCoeff() < 1e-14);

  const OperatorSum back = parse_operator_sum(to_string(h));
  REQUIRE(back.terms.size() == h.terms.size());
  for (std::size_t k = 0; k < h.terms.size(); ++k) {
    CHECK(back.terms[k].coeff == h.terms[k].coeff);
    CHECK(back.terms[k].op == h.terms[k].op);
  }
}

TEST_CASE("pauli: local matrices follow the site order") {
  const auto p = PauliString::parse("+1 X4 Z9");
  const std::vector<int> sites{9, 4};
  CHECK((to_local_matrix(p, sites) - oracle::string_matrix("ZX")).cwiseAbs().maxCoeff() < 1e-15);
  CHECK_THROWS_AS(to_matrix(p, 20), std::invalid_argument);
}
