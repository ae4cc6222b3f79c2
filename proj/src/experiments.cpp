#include "rydsim/experiments.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "rydsim/output.hpp"
#include "rydsim/stats.hpp"

#ifndef RYDSIM_VERSION
#define RYDSIM_VERSION "unknown"
#endif

namespace rydsim {

namespace {

using ojson = nlohmann::ordered_json;

int resolve_workers(const RunConfig& c) { return c.workers > 0 ? c.workers : default_workers(); }

// Config echo without the fields that must not influence results.
RunConfig echo_config(const RunConfig& c) {
  RunConfig e = c;
  e.workers = 0;
  e.out.clear();
  return e;
}

ojson summary_header(const RunConfig& c) {
  const std::string echo = echo_config(c).serialize();
  ojson j;
  j["experiment"] = c.experiment;
  j["code_version"] = RYDSIM_VERSION;
  j["seed"] = c.seed;
  j["model_hash"] = sha256_hex(echo);
  j["config"] = echo;
  return j;
}

void attach_files(ojson& j, const std::vector<OutputFile>& files) {
  ojson sums = ojson::object();
  for (const auto& f : files) sums[f.name] = sha256_hex(f.content);
  j["checksums"] = sums;
}

ojson aggregate_json(const AggregateSeries& a) {
  ojson out = ojson::object();
  for (std::size_t o = 0; o < a.names.size(); ++o) {
    ojson mean = ojson::array();
    ojson sem = ojson::array();
    for (std::size_t k = 0; k < a.sweeps.size(); ++k) {
      mean.push_back(a.mean[k][o]);
      sem.push_back(a.sem[k][o]);
    }
    out[a.names[o]] = {{"mean", mean}, {"sem", sem}};
  }
  return out;
}

int observable_index(const TrajectoryRecord& r, const std::string& name) {
  const auto it = std::find(r.names.begin(), r.names.end(), name);
  if (it == r.names.end()) throw std::invalid_argument("missing observable " + name);
  return static_cast<int>(it - r.names.begin());
}

// Per-trajectory mean of one observable over samples with sweep in (lo, hi].
std::vector<double> window_means(const std::vector<TrajectoryRecord>& records, int obs, long lo, long hi) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    double s = 0.0;
    int n = 0;
    for (const auto& x : r.samples) {
      if (x.sweep > lo && x.sweep <= hi) {
        s += x.values[obs];
        ++n;
      }
    }
    if (n == 0) throw std::invalid_argument("window_means: empty window");
    out.push_back(s / n);
  }
  return out;
}

}  // namespace

const OutputFile* ExperimentResult::find(const std::string& name) const {
  for (const auto& f : files) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

ToricModel toric_model_from(const RunConfig& c) {
  ToricModel m = make_toric_model(c.toric_L);
  m.phi = c.toric_phi;
  m.theta = c.toric_theta;
  m.tau = c.toric_tau;
  m.schedule = flip_schedule_from_name(c.toric_schedule);
  m.coherent = c.toric_coherent;
  m.heat_vertices = c.toric_heat_vertices;
  if (c.toric_errors) {
    m.error = ErrorModel::single_site(c.toric_q, pauli_from_char(c.toric_q_letter.at(0)));
    if (!c.toric_q_spec.empty()) m.error.custom = parse_operator_sum(c.toric_q_spec);
  }
  if (c.toric_p_heat >= 0.0) {
    m.p_heat = c.toric_p_heat;
  } else if (c.toric_errors) {
    // The error flips a stabilizer with probability ~ (phi |Q|)^2 per step.
    const double r = (c.toric_q / 0.1) * (c.toric_phi / 0.5);
    m.p_heat = std::min(1.0, kCalibratedHeating * r * r);
  }
  return m;
}

GaugeModel gauge_model_from(const RunConfig& c) {
  GaugeModel m = make_gauge_model(c.gauge_Lx, c.gauge_Ly, c.gauge_Lz, c.gauge_U, c.gauge_J, c.gauge_V);
  m.theta_constraint = c.gauge_theta_constraint;
  m.theta_rk = c.gauge_theta_rk;
  return m;
}

RydbergParams ryd_params_from(const RunConfig& c) {
  RydbergParams p;
  p.omega_p = c.ryd_omega_p;
  p.omega_c = c.ryd_omega_c;
  p.delta = c.ryd_delta;
  if (c.ryd_c6 > 0.0) p.c6 = c.ryd_c6;
  p.tau = c.ryd_tau;
  p.z = c.ryd_z;
  p.gates_per_term = c.ryd_gates_per_term;
  p.overhead = c.ryd_overhead;
  return p;
}

ToricAnalysis analyze_toric(const std::vector<TrajectoryRecord>& records) {
  if (records.empty()) throw std::invalid_argument("analyze_toric: no trajectories");
  const AggregateSeries a = aggregate(records);
  const int d = observable_index(records[0], "anyon_density");
  const int dp = observable_index(records[0], "plaquette_density");
  const int dv = observable_index(records[0], "vertex_density");
  ToricAnalysis r;
  const std::size_t last = a.sweeps.size() - 1;
  r.final_density = a.mean[last][d];
  r.final_sem = a.sem[last][d];
  r.final_plaquette_density = a.mean[last][dp];
  r.final_vertex_density = a.mean[last][dv];
  for (std::size_t k = 0; k + 1 < a.sweeps.size(); ++k) {
    const double slack = 3.0 * std::hypot(a.sem[k][d], a.sem[k + 1][d]);
    if (a.mean[k + 1][d] > a.mean[k][d] + slack) r.nonincreasing = false;
  }
  const long S = a.sweeps.back();
  const long q2 = S / 2;
  const long q3 = (3 * S) / 4;
  if (S >= 4) {
    const auto late = window_means(records, d, q3, S);
    const MeanSem ms = mean_sem(late);
    r.plateau_density = ms.mean;
    r.plateau_sem = ms.sem;
    r.plateau_sigmas = ms.sem > 0.0 ? ms.mean / ms.sem : (ms.mean > 0.0 ? INFINITY : 0.0);
    if (records.size() >= 2) r.stationarity_p = welch_t_test(window_means(records, d, q2, q3), late).p_value;
  } else {
    r.plateau_density = r.final_density;
    r.plateau_sem = r.final_sem;
  }
  if (r.plateau_density > 0.0 && r.plateau_density < 1.0) r.t_eff_over_e0 = effective_temperature(r.plateau_density);
  return r;
}

GaugeAnalysis analyze_gauge(const std::vector<TrajectoryRecord>& records, int constraint_sweeps) {
  if (records.empty()) throw std::invalid_argument("analyze_gauge: no trajectories");
  const AggregateSeries a = aggregate(records);
  const int c = observable_index(records[0], "charge_density");
  const int f = observable_index(records[0], "rk_fidelity");
  const int df = observable_index(records[0], "dark_fidelity");
  GaugeAnalysis r;
  const std::size_t last = a.sweeps.size() - 1;
  r.final_charge = a.mean[last][c];
  r.final_rk_fidelity = a.mean[last][f];
  r.final_dark_fidelity = a.mean[last][df];
  for (std::size_t k = 0; k < a.sweeps.size(); ++k) {
    r.max_charge = std::max(r.max_charge, a.mean[k][c]);
    if (k + 1 < a.sweeps.size() && a.sweeps[k] >= constraint_sweeps) {
      const double slack = 3.0 * std::hypot(a.sem[k][f], a.sem[k + 1][f]) + 1e-12;
      if (a.mean[k + 1][f] < a.mean[k][f] - slack) r.fidelity_trend_ok = false;
    }
  }
  return r;
}

RampAnalysis analyze_ramp(const std::vector<RampPoint>& points) {
  RampAnalysis r;
  for (const auto& p : points) {
    if (r.phi_scales.empty() || r.phi_scales.back() != p.phi_scale) {
      r.phi_scales.push_back(p.phi_scale);
      r.initial_errors.push_back(std::fabs(p.energy - p.exact_energy));
      r.final_errors.push_back(0.0);
    }
    r.final_errors.back() = std::fabs(p.energy - p.exact_energy);
  }
  std::vector<std::size_t> order(r.phi_scales.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return r.phi_scales[x] > r.phi_scales[y]; });
  for (std::size_t k = 0; k + 1 < order.size(); ++k) {
    if (!(r.final_errors[order[k + 1]] < r.final_errors[order[k]])) r.monotone = false;
  }
  return r;
}

ExperimentResult cmd_toric_cool(const RunConfig& config) {
  config.validate();
  const ToricModel model = toric_model_from(config);
  ToricCoolOptions o;
  o.sweeps = config.toric_sweeps;
  o.trajectories = config.toric_trajectories;
  o.engine = toric_engine_from_name(config.toric_engine);
  o.seed = config.seed;
  o.workers = resolve_workers(config);
  const auto records = cool_toric(model, o);
  const AggregateSeries agg = aggregate(records);
  const ToricAnalysis an = analyze_toric(records);

  ExperimentResult res;
  res.files.push_back({"toric_aggregate.csv", aggregate_csv(agg)});
  if (config.toric_write_trajectories) res.files.push_back({"toric_trajectories.csv", trajectories_csv(records)});

  ojson j = summary_header(config);
  j["engine"] = config.toric_engine;
  j["lattice_L"] = config.toric_L;
  j["qubits"] = model.lattice.link_count + 1;
  j["E0_over_hbar_rad_per_s"] = model.E0();
  j["p_heat"] = model.p_heat;
  j["trajectories"] = agg.trajectories;
  j["final"] = {{"anyon_density", an.final_density},
                {"anyon_density_sem", an.final_sem},
                {"plaquette_density", an.final_plaquette_density},
                {"vertex_density", an.final_vertex_density}};
  j["trend_nonincreasing"] = an.nonincreasing;
  j["plateau"] = {{"density", an.plateau_density},
                  {"sem", an.plateau_sem},
                  {"sigmas_above_zero", std::isfinite(an.plateau_sigmas) ? ojson(an.plateau_sigmas) : ojson(nullptr)},
                  {"stationarity_p", an.stationarity_p}};
  if (an.t_eff_over_e0) {
    j["T_eff_over_E0"] = *an.t_eff_over_e0;
    j["T_eff_kelvin"] = *an.t_eff_over_e0 * kHbar * model.E0() / 1.380649e-23;
  } else {
    j["T_eff_over_E0"] = nullptr;
    j["T_eff_note"] = "plateau density is zero; the effective temperature is zero";
  }
  j["aggregate"] = aggregate_json(agg);
  attach_files(j, res.files);
  res.summary_json = j.dump(2) + "\n";
  return res;
}

ExperimentResult cmd_gauge_cool(const RunConfig& config) {
  config.validate();
  const GaugeModel model = gauge_model_from(config);
  const DimerSectors sectors = dimer_sectors(model.lattice);
  GaugeCoolOptions o;
  o.sweeps = config.gauge_sweeps;
  o.constraint_sweeps = config.gauge_constraint_sweeps;
  o.trajectories = config.gauge_trajectories;
  o.initial = gauge_initial_from_name(config.gauge_initial);
  o.tau = config.gauge_tau;
  o.seed = config.seed;
  o.workers = resolve_workers(config);
  const auto records = cool_gauge(model, sectors, o);
  const AggregateSeries agg = aggregate(records);
  const GaugeAnalysis an = analyze_gauge(records, o.initial == GaugeInitial::Covering ? 0 : o.constraint_sweeps);

  ExperimentResult res;
  res.files.push_back({"gauge_aggregate.csv", aggregate_csv(agg)});
  res.files.push_back({"gauge_trajectories.csv", trajectories_csv(records)});

  ojson j = summary_header(config);
  j["spins"] = model.n_system();
  j["coverings"] = sectors.coverings.size();
  j["sectors"] = sectors.sectors.size();
  j["reference_sector_size"] = sectors.sectors.at(0).size();
  j["trajectories"] = agg.trajectories;
  j["final"] = {{"charge_density", an.final_charge},
                {"rk_fidelity", an.final_rk_fidelity},
                {"dark_fidelity", an.final_dark_fidelity}};
  j["max_charge_density"] = an.max_charge;
  j["fidelity_trend_ok"] = an.fidelity_trend_ok;
  j["aggregate"] = aggregate_json(agg);
  attach_files(j, res.files);
  res.summary_json = j.dump(2) + "\n";
  return res;
}

ExperimentResult cmd_gauge_ramp(const RunConfig& config) {
  config.validate();
  const GaugeModel model = gauge_model_from(config);
  const DimerSectors sectors = dimer_sectors(model.lattice);
  std::vector<RampPoint> points;
  for (double s : config.phi_scales()) {
    auto trace = adiabatic_ramp(model, sectors, s, config.ramp_total_time);
    points.insert(points.end(), trace.begin(), trace.end());
  }
  const RampAnalysis an = analyze_ramp(points);

  ExperimentResult res;
  res.files.push_back({"gauge_ramp.csv", ramp_csv(points)});
  ojson j = summary_header(config);
  ojson runs = ojson::array();
  for (std::size_t k = 0; k < an.phi_scales.size(); ++k) {
    runs.push_back({{"phi_scale", an.phi_scales[k]},
                    {"initial_abs_error", an.initial_errors[k]},
                    {"final_abs_error", an.final_errors[k]}});
  }
  j["runs"] = runs;
  j["final_error_monotone"] = an.monotone;
  attach_files(j, res.files);
  res.summary_json = j.dump(2) + "\n";
  return res;
}

ExperimentResult cmd_ryd_params(const RunConfig& config) {
  config.validate();
  ExperimentResult res;
  const std::string report = ryd_params_report(ryd_params_from(config)) + "\n";
  res.files.push_back({"ryd_params.json", report});
  ojson j = summary_header(config);
  j["report"] = ojson::parse(report);
  attach_files(j, res.files);
  res.summary_json = j.dump(2) + "\n";
  return res;
}

void write_result(const ExperimentResult& result, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& f : result.files) write_text_file((std::filesystem::path(dir) / f.name).string(), f.content);
  write_text_file((std::filesystem::path(dir) / "summary.json").string(), result.summary_json);
}

}  // namespace rydsim
