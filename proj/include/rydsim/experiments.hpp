#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rydsim/config.hpp"
#include "rydsim/gauge.hpp"
#include "rydsim/rydphys.hpp"
#include "rydsim/toric.hpp"

namespace rydsim {

struct OutputFile {
  std::string name;  // relative to the output directory
  std::string content;
};

// Files plus a summary that depends only on the config (minus workers and
// output path), the seed and the code version.
struct ExperimentResult {
  std::vector<OutputFile> files;
  std::string summary_json;
  const OutputFile* find(const std::string& name) const;
};

ToricModel toric_model_from(const RunConfig& config);
GaugeModel gauge_model_from(const RunConfig& config);
RydbergParams ryd_params_from(const RunConfig& config);

struct ToricAnalysis {
  double final_density = 0.0;
  double final_sem = 0.0;
  double final_plaquette_density = 0.0;
  double final_vertex_density = 0.0;
  // Every sweep-to-sweep rise of the mean stays inside 3 combined SEMs.
  bool nonincreasing = true;
  // Mean over the last quarter of sweeps, averaged per trajectory first.
  double plateau_density = 0.0;
  double plateau_sem = 0.0;
  double plateau_sigmas = 0.0;
  // Welch test between per-trajectory means of the third and fourth quarter.
  double stationarity_p = 1.0;
  // T_eff / (E0 / k_B); empty when the plateau density is 0.
  std::optional<double> t_eff_over_e0;
};
ToricAnalysis analyze_toric(const std::vector<TrajectoryRecord>& records);

struct GaugeAnalysis {
  double final_charge = 0.0;
  double final_rk_fidelity = 0.0;
  double final_dark_fidelity = 0.0;
  double max_charge = 0.0;
  // rk_fidelity never drops by more than 3 SEMs once RK jumps are on.
  bool fidelity_trend_ok = true;
};
GaugeAnalysis analyze_gauge(const std::vector<TrajectoryRecord>& records, int constraint_sweeps);

struct RampAnalysis {
  std::vector<double> phi_scales;
  std::vector<double> final_errors;
  std::vector<double> initial_errors;
  bool monotone = true;  // final error shrinks with every smaller phi_scale
};
RampAnalysis analyze_ramp(const std::vector<RampPoint>& points);

ExperimentResult cmd_toric_cool(const RunConfig& config);
ExperimentResult cmd_gauge_cool(const RunConfig& config);
ExperimentResult cmd_gauge_ramp(const RunConfig& config);
ExperimentResult cmd_ryd_params(const RunConfig& config);

// Writes every file and summary.json under `dir`.
void write_result(const ExperimentResult& result, const std::string& dir);

}  // namespace rydsim
