#include <doctest.h>

#include <cmath>
#include <json.hpp>
#include <random>

#include "rydsim/config.hpp"
#include "rydsim/experiments.hpp"
#include "rydsim/output.hpp"
#include "rydsim/stats.hpp"
#include "rydsim/verify.hpp"

using namespace rydsim;

TEST_CASE("config: defaults") {
  const RunConfig c;
  CHECK(c.toric_q == 0.1);
  CHECK(c.toric_trajectories == 1000);
  CHECK(c.gauge_Lx == 2);
  CHECK(c.gauge_Ly == 2);
  CHECK(c.gauge_Lz == 1);
  CHECK(c.phi_scales() == std::vector<double>{0.2, 0.1, 0.05});
}

TEST_CASE("config: parse(serialize(c)) == c") {
  std::mt19937_64 g(2);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    RunConfig c;
    c.seed = g();
    c.toric_phi = u(g);
    c.toric_tau = std::abs(u(g)) * 1e-7;
    c.gauge_V = u(g) / 3;
    c.ryd_c6 = std::abs(u(g)) * 1e-58;
    c.toric_q_spec = "0.1*+1 Z0;0.05*+1 X1";
    c.toric_errors = trial % 2 == 0;
    c.out = "dir with spaces/" + std::to_string(trial);
    CHECK(RunConfig::parse(c.serialize()) == c);
  }
}

TEST_CASE("config: overrides, comments and errors") {
  RunConfig c = RunConfig::parse("# comment\n[toric]\nL = 3\n; other comment\nengine = walker\n");
  CHECK(c.toric_L == 3);
  CHECK(c.toric_engine == "walker");
  c.set("gauge.sweeps=12");
  CHECK(c.gauge_sweeps == 12);
  CHECK_THROWS_AS(c.set("gauge.nope=1"), std::invalid_argument);
  CHECK_THROWS_AS(c.set("toric.L=abc"), std::invalid_argument);
  CHECK_THROWS_AS(RunConfig::parse("[toric]\nL 3\n"), std::invalid_argument);
  CHECK_THROWS_AS(RunConfig::parse("[nosuch]\nx = 1\n"), std::invalid_argument);
  RunConfig bad;
  bad.toric_L = 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = RunConfig{};
  bad.toric_engine = "magic";
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("stats: mean, SEM and Welch test") {
  const MeanSem m = mean_sem({1, 2, 3, 4});
  CHECK(m.mean == doctest::Approx(2.5));
  CHECK(m.sem == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
  // Reference: scipy.stats.ttest_ind([1,2,3,4,5], [2,4,6,8,10], equal_var=False).
  const TwoSampleTest t = welch_t_test({1, 2, 3, 4, 5}, {2, 4, 6, 8, 10});
  CHECK(t.t == doctest::Approx(-1.8973665961010275).epsilon(1e-12));
  CHECK(t.p_value == doctest::Approx(0.10753119493062718).epsilon(1e-9));
  CHECK(welch_t_test({1, 1, 1}, {1, 1, 1}).p_value == 1.0);
  CHECK(welch_t_test({1, 1, 1}, {2, 2, 2}).p_value == 0.0);
  CHECK(log_log_slope({1, 2, 4}, {3, 24, 192}) == doctest::Approx(3.0));
}

TEST_CASE("output: sha256 and CSV schema") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  TrajectoryRecord r;
  r.names = {"a"};
  r.record(0, 0.0, {0.25});
  r.record(1, 2e-6, {1.0 / 3.0});
  const std::string csv = trajectories_csv({r});
  CHECK(csv.rfind("# schema=1\ntrajectory_id,sweep,time_s,observable_name,value\n", 0) == 0);
  CHECK(csv.find("0.33333333333333331") != std::string::npos);
  CHECK(aggregate_csv(aggregate({r})).rfind("# schema=1\nsweep,time_s,observable_name,mean,sem,stddev,trajectories\n", 0) ==
        0);
  CHECK(ramp_csv({}).rfind("# schema=1\nphi_scale,step,time,V_over_J,energy,exact_energy\n", 0) == 0);
}

TEST_CASE("experiments: toric output is independent of the worker count") {
  RunConfig c;
  c.toric_trajectories = 24;
  c.toric_sweeps = 4;
  c.workers = 1;
  const ExperimentResult a = cmd_toric_cool(c);
  c.workers = 3;
  const ExperimentResult b = cmd_toric_cool(c);
  REQUIRE(a.files.size() == b.files.size());
  for (std::size_t k = 0; k < a.files.size(); ++k) CHECK(a.files[k].content == b.files[k].content);
  CHECK(a.summary_json == b.summary_json);
  const auto j = nlohmann::json::parse(a.summary_json);
  CHECK(j["checksums"]["toric_aggregate.csv"] == sha256_hex(a.find("toric_aggregate.csv")->content));
  c.seed = 2;
  CHECK(cmd_toric_cool(c).find("toric_aggregate.csv")->content != a.find("toric_aggregate.csv")->content);
}

TEST_CASE("experiments: walker engine runs a large lattice") {
  RunConfig c;
  c.toric_engine = "walker";
  c.toric_L = 16;
  c.toric_trajectories = 50;
  c.toric_sweeps = 5;
  const auto j = nlohmann::json::parse(cmd_toric_cool(c).summary_json);
  CHECK(j["final"].contains("plaquette_density"));
  CHECK(j["final"].contains("vertex_density"));
}

TEST_CASE("experiments: ryd-params summary") {
  const auto j = nlohmann::json::parse(cmd_ryd_params(RunConfig{}).summary_json);
  CHECK(j["report"]["gate_time_s"].get<double>() == doctest::Approx(320e-9).epsilon(1e-9));
}

TEST_CASE("verify: default checks pass and a B_p sign error is caught") {
  VerifyOptions o;
  o.include_engine = false;
  const auto ok = run_verification(o);
  CHECK(all_passed(ok));
  CHECK(verification_report(ok).find("PASS") != std::string::npos);

  o.ring_exchange = [](std::span<const int> p) {
    OperatorSum s = ring_exchange_terms(p);
    s.terms.front().coeff = -s.terms.front().coeff;
    return s;
  };
  const auto bad = run_verification(o);
  CHECK(!all_passed(bad));
  for (const auto& c : bad)
    if (c.name == "ring_exchange_decomposition") CHECK(!c.passed);
}
