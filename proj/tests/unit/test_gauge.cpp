#include <doctest.h>

#include "oracle.hpp"
#include "rydsim/gauge.hpp"

using namespace rydsim;

namespace {

oracle::M sigma_plus() {
  oracle::M m = oracle::M::Zero(2, 2);
  m(0, 1) = 1.0;  // |up><down| with up = bit 0
  return m;
}

// S1+ S2- S3+ S4- + h.c. on four qubits.
oracle::M ring_exchange_reference() {
  const oracle::M sp = sigma_plus(), sm = sigma_plus().adjoint();
  const oracle::M t = oracle::embed(sp, 0, 4) * oracle::embed(sm, 1, 4) * oracle::embed(sp, 2, 4) * oracle::embed(sm, 3, 4);
  return t + t.adjoint();
}

const std::vector<int> kPlaq{0, 1, 2, 3};

}  // namespace

TEST_CASE("gauge: operator decompositions equal the spin-operator forms") {
  const oracle::M B = ring_exchange_reference();
  CHECK((to_matrix(ring_exchange_terms(kPlaq), 4) - B).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((to_matrix(rk_terms(kPlaq), 4) - B * B).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(ring_exchange_terms(kPlaq).terms.size() == 8);
  CHECK(rk_terms(kPlaq).terms.size() == 8);

  const std::vector<int> oct{0, 1, 2, 3, 4, 5};
  oracle::M sz = oracle::M::Zero(64, 64);
  for (int k = 0; k < 6; ++k) sz += oracle::embed(oracle::pauli('Z'), k, 6);
  CHECK((to_matrix(constraint_terms(oct), 6) - sz * sz).cwiseAbs().maxCoeff() < 1e-12);

  // (1/2)(1 - B_p) B_p = (1/16) sum_j C_j.
  oracle::M sum = oracle::M::Zero(16, 16);
  for (const auto& c : ub_strings(kPlaq)) sum += to_matrix(c, 4);
  const oracle::M id = oracle::M::Identity(16, 16);
  CHECK((sum / 16.0 - 0.5 * (id - B) * B).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("gauge: U_B sequence") {
  const oracle::M m = sequence_matrix(gate_UB_sequence(4, kPlaq), 5);
  const oracle::M B = ring_exchange_reference();
  const oracle::M id = oracle::M::Identity(16, 16);
  const oracle::M U = oracle::expm(oracle::c(0, kPi / 2) * (id - B) * B);
  CHECK((m.block(16, 16, 16, 16) - U).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((m.block(0, 0, 16, 16) - id).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("gauge: flippable plaquettes alternate") {
  const std::array<int, 4> p{0, 1, 2, 3};
  CHECK(plaquette_flippable(0b0101, p));
  CHECK(plaquette_flippable(0b1010, p));
  CHECK(!plaquette_flippable(0b0011, p));
  CHECK(!plaquette_flippable(0b0000, p));
}

TEST_CASE("gauge: RK state is a zero-energy dark state at V = J") {
  const GaugeModel m = make_gauge_model(2, 2, 1);
  const DimerSectors sec = dimer_sectors(m.lattice);
  const StateVector rk = rk_state(sec, m.n_system());
  CHECK(rk.norm_squared() == doctest::Approx(1.0));
  CHECK(charge_density(rk, m.lattice) == doctest::Approx(0.0));
  CHECK(rk_fidelity(rk, sec) == doctest::Approx(1.0));
  CHECK(dark_state_fidelity(rk, sec) == doctest::Approx(1.0));
  CHECK(std::abs(rk.expectation(m.hamiltonian(1.0))) < 1e-10);

  // Sector matrix oracle: rows sum to zero at V = J (RK point).
  const Eigen::MatrixXd h = sector_hamiltonian(m, sec.sectors[0], 1.0);
  CHECK(h.rowwise().sum().cwiseAbs().maxCoeff() < 1e-12);
  CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("gauge: exact ground state agrees with the Pauli Hamiltonian") {
  const GaugeModel m = make_gauge_model(2, 2, 1);
  const DimerSectors sec = dimer_sectors(m.lattice);
  for (double v : {1.0, 0.5, 0.0}) {
    const GroundState g = exact_ground_state(m, sec, v);
    CHECK(g.residual < 1e-9);
    CHECK(g.state.expectation(m.hamiltonian(v)) == doctest::Approx(g.energy).epsilon(1e-10));
    if (v == 1.0) CHECK(std::abs(g.energy) < 1e-10);
  }
}

TEST_CASE("gauge: all-down start loses its charges") {
  const GaugeModel m = make_gauge_model(2, 2, 1);
  const DimerSectors sec = dimer_sectors(m.lattice);
  GaugeCoolOptions o;
  o.sweeps = 25;
  o.constraint_sweeps = 25;
  o.trajectories = 6;
  const auto rec = cool_gauge(m, sec, o);
  const AggregateSeries a = aggregate(rec);
  CHECK(a.mean.front()[0] > 0.5);
  CHECK(a.mean.back()[0] < a.mean.front()[0]);
}

TEST_CASE("gauge: covering start stays charge free") {
  const GaugeModel m = make_gauge_model(2, 2, 1);
  const DimerSectors sec = dimer_sectors(m.lattice);
  GaugeCoolOptions o;
  o.sweeps = 4;
  o.constraint_sweeps = 1;
  o.trajectories = 3;
  o.initial = GaugeInitial::Covering;
  const AggregateSeries a = aggregate(cool_gauge(m, sec, o));
  for (const auto& row : a.mean) CHECK(row[0] < 1e-9);
}

TEST_CASE("gauge: ramp starts at the exact energy") {
  const GaugeModel m = make_gauge_model(2, 2, 1);
  const DimerSectors sec = dimer_sectors(m.lattice);
  const auto pts = adiabatic_ramp(m, sec, 0.5, 2.0);
  REQUIRE(pts.size() >= 2);
  CHECK(std::abs(pts.front().energy - pts.front().exact_energy) < 1e-9);
  CHECK(pts.front().V_over_J == doctest::Approx(1.0));
  for (const auto& p : pts) CHECK(p.energy >= p.exact_energy - 1e-9);
}
