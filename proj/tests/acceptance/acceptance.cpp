// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance              run all criteria
//   acceptance --criterion N

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "rydsim/config.hpp"
#include "rydsim/experiments.hpp"
#include "rydsim/gates.hpp"
#include "rydsim/gauge.hpp"
#include "rydsim/rydphys.hpp"
#include "rydsim/toric.hpp"
#include "rydsim/verify.hpp"

using namespace rydsim;

namespace {

// Tolerances and budgets.
constexpr double kGateIdentityTol = 1e-10;
constexpr int kGateIdentitySamples = 20;
constexpr double kReductionExponentMin = 2.7;
constexpr double kExpansionRatio = 8.0;
constexpr double kExpansionRatioSlack = 0.2;
constexpr double kDecompositionTol = 1e-12;
constexpr double kUbTol = 1e-9;
constexpr double kFinalDensityMax = 0.01;
constexpr double kEquivalenceSigmas = 3.0;
constexpr double kPlateauSigmasMin = 5.0;
constexpr double kStationarityPMin = 0.01;
constexpr double kChargeMax = 0.01;
constexpr double kFidelityMin = 0.99;
constexpr double kRampStartTol = 1e-9;
constexpr double kGateTimeNs = 320.0;
constexpr double kGateTimeRelTol = 0.01;

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

int workers() { return default_workers(); }

Outcome gate_identity() {
  const double dev = gate_identity_deviation(kGateIdentitySamples, 1);
  return {dev < kGateIdentityTol, fmt("max deviation %.3g (< %.0e)", dev, kGateIdentityTol)};
}

Outcome lindblad_reduction() {
  const ReductionScaling s = lindblad_reduction_scaling({0.2, 0.1, 0.05}, 1);
  return {s.exponent >= kReductionExponentMin,
          fmt("exponent %.4f (>= %.1f), defects %.3g %.3g", s.exponent, kReductionExponentMin, s.defects[0],
              s.defects[2])};
}

Outcome expansion() {
  const auto ex = imperfect_step_expansion({0.2, 0.1}, 0.1);
  const double rc = ex[0].c_residual / ex[1].c_residual;
  const double rd = ex[0].d_plus_residual / ex[1].d_plus_residual;
  const double lo = kExpansionRatio * (1 - kExpansionRatioSlack);
  const double hi = kExpansionRatio * (1 + kExpansionRatioSlack);
  const bool ok_c = rc >= lo && rc <= hi;
  const bool ok_d = rd >= lo && rd <= hi;
  return {ok_c && ok_d, fmt("C ratio %.4f, D ratio %.4f (each in [%.1f, %.1f])", rc, rd, lo, hi)};
}

Outcome decompositions() {
  const double e1 = constraint_decomposition_error();
  const double e2 = ring_exchange_decomposition_error(ring_exchange_terms);
  const double e3 = rk_decomposition_error(rk_terms);
  const double e4 = projector_decomposition_error(ring_exchange_terms, rk_terms);
  const double e5 = ub_sequence_error();
  const double worst = std::max({e1, e2, e3, e4});
  return {worst < kDecompositionTol && e5 < kUbTol,
          fmt("max matrix error %.3g (< 1e-12), U_B error %.3g (< 1e-9)", worst, e5)};
}

Outcome toric_cooling() {
  RunConfig c;
  c.toric_L = 2;
  c.toric_trajectories = 1000;
  c.toric_sweeps = 20;
  c.toric_errors = false;
  c.toric_theta = kPi / 2;
  ToricCoolOptions o;
  o.sweeps = c.toric_sweeps;
  o.trajectories = c.toric_trajectories;
  o.workers = workers();
  const ToricAnalysis a = analyze_toric(cool_toric(toric_model_from(c), o));
  const double eq2 = engine_equivalence_sigmas(2, 300, 20000, 6, 11, workers());
  const double eq3 = engine_equivalence_sigmas(3, 40, 20000, 5, 13, workers());
  const bool ok = a.final_density < kFinalDensityMax && a.nonincreasing && eq2 < kEquivalenceSigmas &&
                  eq3 < kEquivalenceSigmas;
  return {ok, fmt("final density %.4g (< 0.01), trend nonincreasing=%g, dense/walker L=2 %.2f sigma, L=3 %.2f sigma (< 3)",
                  a.final_density, a.nonincreasing ? 1.0 : 0.0, eq2, eq3)};
}

Outcome heating_plateau() {
  RunConfig c;
  c.toric_L = 2;
  c.toric_errors = true;
  c.toric_q = 0.1;
  ToricCoolOptions o;
  o.sweeps = 60;
  o.trajectories = 1000;
  o.workers = workers();
  const ToricAnalysis a = analyze_toric(cool_toric(toric_model_from(c), o));
  const bool finite = a.t_eff_over_e0.has_value() && std::isfinite(*a.t_eff_over_e0);
  const bool ok = a.plateau_sigmas > kPlateauSigmasMin && a.stationarity_p > kStationarityPMin && finite;
  return {ok, fmt("plateau n = %.4g (%.1f sigma > 5), stationarity p = %.3f (> 0.01), T_eff/E0 = %.4g",
                  a.plateau_density, a.plateau_sigmas, a.stationarity_p, finite ? *a.t_eff_over_e0 : NAN)};
}

Outcome lgt_cooling() {
  const GaugeModel m = make_gauge_model(2, 2, 1);
  const DimerSectors sec = dimer_sectors(m.lattice);
  GaugeCoolOptions o;
  o.sweeps = 60;
  o.constraint_sweeps = 40;
  o.trajectories = 100;
  o.workers = workers();
  o.initial = GaugeInitial::AllDown;
  const GaugeAnalysis down = analyze_gauge(cool_gauge(m, sec, o), o.constraint_sweeps);
  o.initial = GaugeInitial::Covering;
  o.constraint_sweeps = 0;
  o.sweeps = 30;
  const GaugeAnalysis cov = analyze_gauge(cool_gauge(m, sec, o), o.constraint_sweeps);
  const bool ok = m.n_system() == 12 && down.final_charge < kChargeMax && cov.final_rk_fidelity >= kFidelityMin;
  return {ok, fmt("all-down final charge %.4g (< 0.01), covering start RK fidelity %.5f (>= 0.99), %g spins",
                  down.final_charge, cov.final_rk_fidelity, m.n_system())};
}

Outcome ramp() {
  const GaugeModel m = make_gauge_model(2, 2, 1);
  const DimerSectors sec = dimer_sectors(m.lattice);
  std::vector<RampPoint> pts;
  for (double s : {0.2, 0.1, 0.05}) {
    const auto p = adiabatic_ramp(m, sec, s, 10.0);
    pts.insert(pts.end(), p.begin(), p.end());
  }
  const RampAnalysis a = analyze_ramp(pts);
  double start = 0.0;
  for (double e : a.initial_errors) start = std::max(start, e);
  return {a.monotone && start < kRampStartTol,
          fmt("final errors %.3g, %.3g, %.3g (decreasing), t=0 error %.2g", a.final_errors[0], a.final_errors[1],
              a.final_errors[2], start)};
}

Outcome rydberg_numbers() {
  const double tg = gate_time(2 * kPi * 1.2e9, 2 * kPi * 100e6) * 1e9;
  const double tau = sweep_time(4, 2, 320e-9) * 1e6;
  const bool ok = std::fabs(tg - kGateTimeNs) / kGateTimeNs < kGateTimeRelTol && tau >= 1.0 && tau <= 10.0;
  return {ok, fmt("T_gate %.3f ns (320 +- 1%%), tau %.3f us (in [1, 10])", tg, tau)};
}

Outcome determinism() {
  RunConfig c;
  c.workers = 1;
  const ExperimentResult a = cmd_toric_cool(c);
  c.workers = 4;
  const ExperimentResult b = cmd_toric_cool(c);
  bool same = a.files.size() == b.files.size() && a.summary_json == b.summary_json;
  for (std::size_t k = 0; same && k < a.files.size(); ++k) same = a.files[k].content == b.files[k].content;
  return {same, fmt("%g files compared across 1 and 4 workers", static_cast<double>(a.files.size()))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "Run one criterion (1-10)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all{
      {1, "gate identity", 1, gate_identity},
      {2, "Kraus/Lindblad reduction", 10, lindblad_reduction},
      {3, "imperfect-step expansion", 5, expansion},
      {4, "operator decompositions", 5, decompositions},
      {5, "toric cooling", 300, toric_cooling},
      {6, "toric heating plateau", 600, heating_plateau},
      {7, "gauge cooling", 600, lgt_cooling},
      {8, "adiabatic ramp", 600, ramp},
      {9, "Rydberg gate numbers", 1, rydberg_numbers},
      {10, "determinism", 120, determinism},
  };

  bool all_ok = true;
  for (const auto& c : all) {
    if (only != 0 && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = c.run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_s;
    const bool ok = o.passed && in_time;
    all_ok = all_ok && ok;
    std::printf("criterion %2d %-26s %s  %s; runtime %.2f s (< %g s)\n", c.id, c.title, ok ? "PASS" : "FAIL",
                o.detail.c_str(), secs, c.budget_s);
    std::fflush(stdout);
  }
  return all_ok ? 0 : 1;
}
