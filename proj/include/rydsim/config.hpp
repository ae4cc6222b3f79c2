#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rydsim {

// Every knob of a CLI run. On disk it is a flat "key = value" file with
// "[section]" headers; doubles are written with 17 significant digits so
// parse(serialize(c)) == c.
struct RunConfig {
  // [run]
  std::string experiment = "toric-cool";
  std::uint64_t seed = 1;
  int workers = 0;  // 0: RYDSIM_WORKERS or hardware concurrency; never affects results
  std::string out = "out";

  // [toric]
  int toric_L = 2;
  int toric_sweeps = 30;
  int toric_trajectories = 1000;
  std::string toric_engine = "dense";
  double toric_phi = 0.5;
  double toric_theta = 1.5707963267948966;
  double toric_tau = 2e-6;
  std::string toric_schedule = "random";
  bool toric_errors = false;
  double toric_q = 0.1;
  std::string toric_q_letter = "Z";
  // Optional custom Q on region-local sites, "coeff*PAULI;coeff*PAULI".
  std::string toric_q_spec;
  double toric_p_heat = -1.0;  // < 0: calibrated value when errors are on, else 0
  bool toric_heat_vertices = false;
  bool toric_coherent = true;
  bool toric_write_trajectories = true;

  // [gauge]
  int gauge_Lx = 2;
  int gauge_Ly = 2;
  int gauge_Lz = 1;
  double gauge_U = 1.0;
  double gauge_J = 1.0;
  double gauge_V = 1.0;
  double gauge_theta_constraint = 1.5707963267948966;
  double gauge_theta_rk = 1.5707963267948966;
  int gauge_sweeps = 60;
  int gauge_constraint_sweeps = 40;
  int gauge_trajectories = 100;
  std::string gauge_initial = "all_down";
  double gauge_tau = 2e-6;

  // [ramp]
  std::string ramp_phi_scales = "0.2,0.1,0.05";
  double ramp_total_time = 10.0;

  // [ryd]
  double ryd_omega_p = 6.283185307179586e8;
  double ryd_omega_c = 6.283185307179586e9;
  double ryd_delta = 7.5398223686155035e9;
  double ryd_c6 = 0.0;  // 0: not supplied
  double ryd_tau = 0.0;  // 0: use the estimated sweep time
  int ryd_z = 4;
  int ryd_gates_per_term = 2;
  double ryd_overhead = 1.2;

  bool operator==(const RunConfig&) const = default;

  std::string serialize() const;
  static RunConfig parse(const std::string& text);
  static RunConfig load(const std::string& path);

  // Applies one "section.key=value" override.
  void set(const std::string& assignment);
  // Rejects out-of-range values with std::invalid_argument.
  void validate() const;
  std::vector<double> phi_scales() const;

  static std::vector<std::string> keys();
};

}  // namespace rydsim
