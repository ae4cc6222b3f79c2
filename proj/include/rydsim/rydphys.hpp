#pragma once

#include <optional>
#include <string>

namespace rydsim {

inline constexpr double kHbar = 1.054571817e-34;  // J s

/// Gate and lattice parameters; angular frequencies in rad/s, C6 in
/// rad/s * m^6, times in seconds.
struct RydbergParams {
  double omega_p = 0.0;
  double omega_c = 0.0;
  double delta = 0.0;
  std::optional<double> c6;
  double tau = 0.0;
  int z = 4;
  int gates_per_term = 2;
  double overhead = 1.2;
};

// T_gate = 16 pi Delta / (3 Omega_p^2).
double gate_time(double delta, double omega_p);
// r = (4 Delta C6 / Omega_c^2)^(1/6): the distance where 4 Delta C6 / (Omega_c^2 r^6) = 1.
double blockade_radius(double delta, double omega_c, double c6);
// Inverse of blockade_radius: the C6 that yields radius r.
double c6_for_radius(double delta, double omega_c, double r);

struct EnergyScales {
  double energy_rad_per_s;  // E / hbar = phi / tau
  double energy_joule;      // hbar phi / tau
  double rate_per_s;        // kappa = theta^2 / tau
};
EnergyScales energy_scales(double phi, double theta, double tau);

// tau = z * gates * T_gate * overhead.
double sweep_time(int z, int gates_per_term, double t_gate, double overhead = 1.2);

// JSON report of every derived quantity; the blockade radius is omitted with
// an explanation when C6 is absent.
std::string ryd_params_report(const RydbergParams& p);

}  // namespace rydsim
