#include <doctest.h>

#include <cmath>

#include "rydsim/stats.hpp"
#include "rydsim/toric.hpp"

using namespace rydsim;

TEST_CASE("toric: all-down start has clean vertices and random plaquettes") {
  const ToricLattice t = build_toric(2);
  const StateVector s = init_all_down(t);
  CHECK(s.qubits() == t.link_count + 1);
  for (int v = 0; v < t.vertex_count(); ++v) CHECK(s.expectation(t.vertex_stabilizer(v)) == doctest::Approx(1.0));
  for (int p = 0; p < t.vertex_count(); ++p)
    CHECK(std::abs(s.expectation(t.plaquette_stabilizer(p))) < 1e-12);
}

TEST_CASE("toric: classical anyon configurations keep even parity") {
  const ToricModel m = make_toric_model(4);
  Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    AnyonConfig c = sample_initial_anyons(m.lattice, rng);
    CHECK(c.even_parity());
    CHECK(c.vertex_count() == 0);
    for (int sweep = 0; sweep < 3; ++sweep) {
      walker_sweep(c, m, sweep, rng);
      CHECK(c.even_parity());
    }
  }
}

TEST_CASE("toric: heating keeps parity and adds anyons") {
  ToricModel m = make_toric_model(3);
  m.p_heat = 0.2;
  Rng rng(4);
  double total = 0.0;
  for (int k = 0; k < 200; ++k) {
    AnyonConfig c{std::vector<std::uint8_t>(9, 0), std::vector<std::uint8_t>(9, 0)};
    walker_sweep(c, m, 0, rng);
    CHECK(c.even_parity());
    total += anyon_density(c);
  }
  CHECK(total > 0.0);
}

TEST_CASE("toric: effective temperature") {
  CHECK(effective_temperature(std::exp(-2.0)) == doctest::Approx(0.5));
  CHECK(effective_temperature(std::exp(-1.0), 3.0) == doctest::Approx(3.0));
}

TEST_CASE("toric: dense engine cools a 2x2 lattice") {
  ToricModel m = make_toric_model(2);
  ToricCoolOptions o;
  o.sweeps = 8;
  o.trajectories = 40;
  o.seed = 3;
  const auto rec = cool_toric(m, o);
  REQUIRE(rec.size() == 40);
  const AggregateSeries a = aggregate(rec);
  CHECK(a.names[0] == "anyon_density");
  CHECK(a.mean.front()[0] > 0.1);
  CHECK(a.mean.back()[0] < 0.05);
  // Vertices start clean and stay clean with perfect gates.
  for (const auto& row : a.mean) CHECK(row[2] == doctest::Approx(0.0));
}

TEST_CASE("toric: walker and dense engines agree on the first sweeps") {
  ToricModel m = make_toric_model(2);
  ToricCoolOptions o;
  o.sweeps = 3;
  o.trajectories = 200;
  o.seed = 9;
  const AggregateSeries dense = aggregate(cool_toric(m, o));
  o.engine = ToricEngine::Walker;
  o.trajectories = 4000;
  const AggregateSeries walker = aggregate(cool_toric(m, o));
  REQUIRE(dense.mean.size() == walker.mean.size());
  for (std::size_t k = 0; k < dense.mean.size(); ++k) {
    const double se = std::hypot(dense.sem[k][0], walker.sem[k][0]) + 1e-3;
    CHECK(std::abs(dense.mean[k][0] - walker.mean[k][0]) < 4 * se);
  }
}
