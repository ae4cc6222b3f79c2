#include "rydsim/gauge.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "rydsim/gates.hpp"

namespace rydsim {

namespace {

struct Letters4 {
  int sign;
  const char* w;
};

// Decompositions of B_p and B_p^2 on the cyclically ordered links 1..4.
constexpr Letters4 kRingExchange[8] = {{+1, "XXXX"}, {+1, "YYYY"}, {+1, "XXYY"}, {+1, "YYXX"},
                                       {-1, "XYXY"}, {-1, "YXYX"}, {+1, "XYYX"}, {+1, "YXXY"}};
constexpr Letters4 kRkTerm[8] = {{+1, "IIII"}, {-1, "IIZZ"}, {+1, "IZIZ"}, {-1, "IZZI"},
                                 {-1, "ZIIZ"}, {+1, "ZIZI"}, {-1, "ZZII"}, {+1, "ZZZZ"}};

OperatorSum four_site_sum(std::span<const int> p, const Letters4 (&table)[8]) {
  if (p.size() != 4) throw std::invalid_argument("plaquette terms need four links");
  OperatorSum out;
  for (const auto& t : table) {
    std::vector<PauliString::Factor> f;
    for (int k = 0; k < 4; ++k) f.push_back({p[k], pauli_from_char(t.w[k])});
    out.add(t.sign / 8.0, PauliString(std::move(f)));
  }
  return out;
}

std::uint64_t mask_of(std::span<const int> sites) {
  std::uint64_t m = 0;
  for (int s : sites) m |= std::uint64_t{1} << s;
  return m;
}

}  // namespace

OperatorSum constraint_terms(std::span<const int> o) {
  if (o.size() != 6) throw std::invalid_argument("constraint_terms: an octahedron has six links");
  OperatorSum out;
  out.add(6.0, PauliString::identity());
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      if (i != j) out.add(1.0, PauliString({{o[i], Pauli::Z}, {o[j], Pauli::Z}}));
    }
  }
  return out;
}

OperatorSum ring_exchange_terms(std::span<const int> plaquette) { return four_site_sum(plaquette, kRingExchange); }

OperatorSum rk_terms(std::span<const int> plaquette) { return four_site_sum(plaquette, kRkTerm); }

bool plaquette_flippable(std::uint64_t basis, const std::array<int, 4>& p) {
  const int b0 = (basis >> p[0]) & 1, b1 = (basis >> p[1]) & 1, b2 = (basis >> p[2]) & 1, b3 = (basis >> p[3]) & 1;
  return b0 != b1 && b1 != b2 && b2 != b3;
}

std::vector<std::uint64_t> enumerate_dimer_coverings(const CubicLattice& lattice) {
  const int n = lattice.link_count;
  if (n > kStateCap) throw std::invalid_argument("enumerate_dimer_coverings: lattice above the state cap");
  std::vector<std::uint64_t> masks;
  for (const auto& o : lattice.octahedra) masks.push_back(mask_of(o));
  std::vector<std::uint64_t> out;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t s = 0; s < total; ++s) {
    bool ok = true;
    for (auto m : masks) {
      if (std::popcount(s & m) != 3) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(s);
  }
  return out;
}

int DimerSectors::sector_of(std::uint64_t covering) const {
  for (std::size_t k = 0; k < sectors.size(); ++k) {
    if (std::binary_search(sectors[k].begin(), sectors[k].end(), covering)) return static_cast<int>(k);
  }
  return -1;
}

DimerSectors dimer_sectors(const CubicLattice& lattice) {
  DimerSectors out;
  out.coverings = enumerate_dimer_coverings(lattice);
  std::map<std::uint64_t, bool> seen;
  for (auto c : out.coverings) seen[c] = false;
  for (auto start : out.coverings) {
    if (seen[start]) continue;
    std::vector<std::uint64_t> comp{start}, stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (const auto& p : lattice.plaquettes) {
        if (!plaquette_flippable(u, p)) continue;
        const auto v = u ^ mask_of(p);
        auto it = seen.find(v);
        if (it == seen.end()) throw std::logic_error("dimer_sectors: flip left the covering set");
        if (!it->second) {
          it->second = true;
          comp.push_back(v);
          stack.push_back(v);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.sectors.push_back(std::move(comp));
  }
  std::stable_sort(out.sectors.begin(), out.sectors.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  return out;
}

OperatorSum GaugeModel::hamiltonian(double V_value) const {
  OperatorSum H;
  for (const auto& o : lattice.octahedra) H += constraint_terms(o).scaled(U);
  for (const auto& p : lattice.plaquettes) {
    H += ring_exchange_terms(p).scaled(-J);
    H += rk_terms(p).scaled(V_value);
  }
  return H;
}

std::vector<JumpOperatorSpec> GaugeModel::constraint_jumps() const {
  std::vector<JumpOperatorSpec> out;
  for (const auto& o : lattice.octahedra) {
    JumpOperatorSpec s;
    s.region = Region::uniform(o, Pauli::Z);
    s.flip_letter = Pauli::X;
    s.theta = theta_constraint;
    s.variant = JumpVariant::OctahedronConstraint;
    s.schedule = schedule;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<JumpOperatorSpec> GaugeModel::rk_jumps() const {
  std::vector<JumpOperatorSpec> out;
  for (const auto& p : lattice.plaquettes) {
    JumpOperatorSpec s;
    s.region = Region::uniform(p, Pauli::Z);
    s.flip_letter = Pauli::Z;
    s.theta = theta_rk;
    s.variant = JumpVariant::RkProjector;
    s.schedule = schedule;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<int> GaugeModel::octahedron_order() const {
  std::vector<int> out;
  for (const auto& g : octahedron_colors.groups) out.insert(out.end(), g.begin(), g.end());
  return out;
}

std::vector<int> GaugeModel::plaquette_order() const {
  std::vector<int> out;
  for (const auto& g : plaquette_colors.groups) out.insert(out.end(), g.begin(), g.end());
  return out;
}

GaugeModel make_gauge_model(int Lx, int Ly, int Lz, double U, double J, double V) {
  GaugeModel m;
  m.lattice = build_cubic(Lx, Ly, Lz);
  m.U = U;
  m.J = J;
  m.V = V;
  m.octahedron_colors = color_sublattices(m.lattice, TermKind::Octahedron);
  m.plaquette_colors = color_sublattices(m.lattice, TermKind::CubicPlaquette);
  return m;
}

StateVector rk_state(const DimerSectors& sectors, int n_system, int sector, int extra_qubits) {
  const auto& basis = sector == kAllCoverings ? sectors.coverings : sectors.sectors.at(sector);
  if (basis.empty()) throw std::invalid_argument("rk_state: empty covering set");
  StateVector psi(n_system + extra_qubits, basis.front());
  auto& a = psi.amplitudes();
  const double w = 1.0 / std::sqrt(static_cast<double>(basis.size()));
  for (auto c : basis) a[c] = w;
  return psi;
}

double charge_density(const StateVector& state, const CubicLattice& lattice) {
  std::vector<std::uint64_t> masks;
  for (const auto& o : lattice.octahedra) masks.push_back(mask_of(o));
  double total = 0.0;
  const auto& a = state.amplitudes();
  for (std::uint64_t i = 0; i < a.size(); ++i) {
    const double p = std::norm(a[i]);
    if (p == 0.0) continue;
    int charged = 0;
    for (auto m : masks) charged += std::popcount(i & m) != 3;
    total += p * charged;
  }
  return total / static_cast<double>(masks.size());
}

double rk_fidelity(const StateVector& state, const DimerSectors& sectors, int sector) {
  const auto& basis = sector == kAllCoverings ? sectors.coverings : sectors.sectors.at(sector);
  cplx acc = 0.0;
  for (auto c : basis) acc += state[c];
  return std::norm(acc) / static_cast<double>(basis.size()) / state.norm_squared();
}

double dark_state_fidelity(const StateVector& state, const DimerSectors& sectors) {
  double f = 0.0;
  for (std::size_t s = 0; s < sectors.sectors.size(); ++s) f += rk_fidelity(state, sectors, static_cast<int>(s));
  return f;
}

Eigen::MatrixXd sector_hamiltonian(const GaugeModel& model, const std::vector<std::uint64_t>& basis, double V_value) {
  const Eigen::Index d = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    for (const auto& p : model.lattice.plaquettes) {
      if (!plaquette_flippable(basis[k], p)) continue;
      H(k, k) += V_value;
      const auto target = basis[k] ^ mask_of(p);
      auto it = std::lower_bound(basis.begin(), basis.end(), target);
      if (it == basis.end() || *it != target) throw std::invalid_argument("sector_hamiltonian: basis is not flip closed");
      H(it - basis.begin(), k) += -model.J;
    }
  }
  return H;
}

GroundState exact_ground_state(const GaugeModel& model, const DimerSectors& sectors, double V_value, int sector,
                               int extra_qubits) {
  const auto& basis = sector == kAllCoverings ? sectors.coverings : sectors.sectors.at(sector);
  const Eigen::MatrixXd H = sector_hamiltonian(model, basis, V_value);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  GroundState gs;
  gs.energy = es.eigenvalues()(0);
  gs.state = StateVector(model.n_system() + extra_qubits, basis.front());
  auto& a = gs.state.amplitudes();
  a[basis.front()] = 0.0;
  for (std::size_t k = 0; k < basis.size(); ++k) a[basis[k]] = es.eigenvectors()(static_cast<Eigen::Index>(k), 0);

  const OperatorSum Hfull = model.hamiltonian(V_value);
  std::vector<cplx> acc(a.size(), cplx{0, 0});
  for (const auto& t : Hfull.terms) {
    StateVector tmp = gs.state;
    tmp.apply_pauli_string(t.op);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += t.coeff * tmp[i];
  }
  double r = 0.0;
  for (std::size_t i = 0; i < acc.size(); ++i) r += std::norm(acc[i] - gs.energy * a[i]);
  gs.residual = std::sqrt(r);
  return gs;
}

bool constraint_jump_step(StateVector& state, int control, std::span<const int> octahedron, double theta,
                          int flip_site, Rng& rng) {
  JumpOperatorSpec s;
  s.region = Region::uniform(octahedron, Pauli::Z);
  s.flip_letter = Pauli::X;
  s.theta = theta;
  s.variant = JumpVariant::OctahedronConstraint;
  return dissipative_step(state, control, s, flip_site, rng);
}

bool rk_jump_step(StateVector& state, int control, std::span<const int> plaquette, double theta, int flip_site,
                  Rng& rng) {
  JumpOperatorSpec s;
  s.region = Region::uniform(plaquette, Pauli::Z);
  s.flip_letter = Pauli::Z;
  s.theta = theta;
  s.variant = JumpVariant::RkProjector;
  return dissipative_step(state, control, s, flip_site, rng);
}

const char* gauge_initial_name(GaugeInitial g) { return g == GaugeInitial::Covering ? "covering" : "all_down"; }

GaugeInitial gauge_initial_from_name(const std::string& name) {
  if (name == "covering") return GaugeInitial::Covering;
  if (name == "all_down") return GaugeInitial::AllDown;
  throw std::invalid_argument("unknown gauge initial state '" + name + "'");
}

std::vector<TrajectoryRecord> cool_gauge(const GaugeModel& model, const DimerSectors& sectors,
                                         const GaugeCoolOptions& options) {
  const int n = model.n_system();
  const int control = n;
  const auto cjumps = model.constraint_jumps();
  const auto rjumps = model.rk_jumps();
  const auto oorder = model.octahedron_order();
  const auto porder = model.plaquette_order();
  const std::uint64_t start =
      options.initial == GaugeInitial::AllDown ? (std::uint64_t{1} << n) - 1 : sectors.reference_covering();

  auto body = [&](int, Rng& rng) {
    TrajectoryRecord rec;
    rec.names = {"charge_density", "rk_fidelity", "dark_fidelity"};
    StateVector psi(n + 1, start);
    auto observe = [&](long sweep) {
      rec.record(sweep, sweep * options.tau,
                 {charge_density(psi, model.lattice), rk_fidelity(psi, sectors, 0), dark_state_fidelity(psi, sectors)});
    };
    observe(0);
    for (long s = 0; s < options.sweeps; ++s) {
      for (int o : oorder) {
        const auto& spec = cjumps[o];
        const int site = spec.flip_site(s, o, rng);
        if (dissipative_step(psi, control, spec, site, rng)) rec.jumps.push_back({s, o, site});
      }
      if (s >= options.constraint_sweeps) {
        for (int p : porder) {
          const auto& spec = rjumps[p];
          const int site = spec.flip_site(s, p, rng);
          if (dissipative_step(psi, control, spec, site, rng)) {
            rec.jumps.push_back({s, static_cast<int>(cjumps.size()) + p, site});
          }
        }
      }
      observe(s + 1);
    }
    return rec;
  };
  return run_trajectories(options.trajectories, options.workers, options.seed, body);
}

std::vector<RampPoint> adiabatic_ramp(const GaugeModel& model, const DimerSectors& sectors, double phi_scale,
                                      double total_time) {
  if (!(phi_scale > 0) || !(total_time > 0)) throw std::invalid_argument("adiabatic_ramp: non-positive time scale");
  const int n = model.n_system();
  const int control = n;
  const int steps = static_cast<int>(std::lround(total_time / phi_scale));
  const double dt = total_time / steps;
  auto V_at = [&](double t) { return model.J * (1.0 - t * model.J / total_time); };

  std::vector<OperatorSum> constraint, ring, rk;
  for (const auto& o : model.lattice.octahedra) constraint.push_back(constraint_terms(o));
  for (const auto& p : model.lattice.plaquettes) {
    ring.push_back(ring_exchange_terms(p));
    rk.push_back(rk_terms(p));
  }
  const auto oorder = model.octahedron_order();
  const auto porder = model.plaquette_order();

  StateVector psi = rk_state(sectors, n, 0, 1);
  std::vector<RampPoint> out;
  auto record = [&](int step, double t) {
    const double V = V_at(t);
    RampPoint pt;
    pt.phi_scale = phi_scale;
    pt.step = step;
    pt.time = t;
    pt.V_over_J = V / model.J;
    pt.energy = psi.expectation(model.hamiltonian(V));
    pt.exact_energy = exact_ground_state(model, sectors, V, 0).energy;
    out.push_back(pt);
  };
  record(0, 0.0);
  for (int k = 0; k < steps; ++k) {
    const double V = V_at((k + 0.5) * dt);
    // exp(-i H dt) with H = U C - J B + V B^2, one commuting group at a time.
    for (int o : oorder) coherent_step(psi, control, constraint[o], -model.U * dt);
    for (int p : porder) {
      coherent_step(psi, control, ring[p], model.J * dt);
      coherent_step(psi, control, rk[p], -V * dt);
    }
    record(k + 1, (k + 1) * dt);
  }
  return out;
}

}  // namespace rydsim
