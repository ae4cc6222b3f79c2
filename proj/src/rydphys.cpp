#include "rydsim/rydphys.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace rydsim {

namespace {

constexpr double kPiValue = 3.14159265358979323846;

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) throw std::invalid_argument(std::string(name) + " must be positive");
}

}  // namespace

double gate_time(double delta, double omega_p) {
  if (delta < 0.0) throw std::invalid_argument("gate_time: detuning must be non-negative");
  require_positive(omega_p, "gate_time: Omega_p");
  return 16.0 * kPiValue * delta / (3.0 * omega_p * omega_p);
}

double blockade_radius(double delta, double omega_c, double c6) {
  require_positive(delta, "blockade_radius: Delta");
  require_positive(omega_c, "blockade_radius: Omega_c");
  require_positive(c6, "blockade_radius: C6");
  return std::pow(4.0 * delta * c6 / (omega_c * omega_c), 1.0 / 6.0);
}

double c6_for_radius(double delta, double omega_c, double r) {
  require_positive(delta, "c6_for_radius: Delta");
  require_positive(omega_c, "c6_for_radius: Omega_c");
  require_positive(r, "c6_for_radius: r");
  return omega_c * omega_c * std::pow(r, 6) / (4.0 * delta);
}

EnergyScales energy_scales(double phi, double theta, double tau) {
  require_positive(tau, "energy_scales: tau");
  return {phi / tau, kHbar * phi / tau, theta * theta / tau};
}

double sweep_time(int z, int gates_per_term, double t_gate, double overhead) {
  if (z < 1 || gates_per_term < 1) throw std::invalid_argument("sweep_time: counts must be positive");
  require_positive(t_gate, "sweep_time: T_gate");
  require_positive(overhead, "sweep_time: overhead");
  return z * gates_per_term * t_gate * overhead;
}

std::string ryd_params_report(const RydbergParams& p) {
  nlohmann::ordered_json j;
  j["inputs"] = {{"omega_p_rad_per_s", p.omega_p},
                 {"omega_c_rad_per_s", p.omega_c},
                 {"delta_rad_per_s", p.delta},
                 {"z", p.z},
                 {"gates_per_term", p.gates_per_term},
                 {"overhead", p.overhead}};
  const double tg = gate_time(p.delta, p.omega_p);
  j["gate_time_s"] = tg;
  const double tau = sweep_time(p.z, p.gates_per_term, tg, p.overhead);
  j["sweep_time_s"] = tau;
  if (p.c6) {
    j["inputs"]["c6_rad_per_s_m6"] = *p.c6;
    j["blockade_radius_m"] = blockade_radius(p.delta, p.omega_c, *p.c6);
  } else {
    j["blockade_radius_m"] = nullptr;
    j["blockade_radius_note"] = "C6 not supplied; the radius needs the van der Waals coefficient as an input";
  }
  const double tau_e = p.tau > 0 ? p.tau : tau;
  const auto e = energy_scales(1.0, 1.0, tau_e);
  j["energy_scales"] = {{"tau_s", tau_e},
                        {"E_over_hbar_rad_per_s_at_phi_1", e.energy_rad_per_s},
                        {"E_over_h_hz_at_phi_1", e.energy_rad_per_s / (2 * kPiValue)},
                        {"kappa_per_s_at_theta_1", e.rate_per_s}};
  return j.dump(2);
}

}  // namespace rydsim
