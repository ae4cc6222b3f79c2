#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rydsim/channels.hpp"
#include "rydsim/lattice.hpp"
#include "rydsim/pauli.hpp"
#include "rydsim/statevec.hpp"

namespace rydsim {

// (S^z_o)^2 = 6 + sum_{i != j, ordered} sigma^z_i sigma^z_j on six links.
OperatorSum constraint_terms(std::span<const int> octahedron);
// B_p = S1+ S2- S3+ S4- + h.c. as eight commuting strings with weights +-1/8.
OperatorSum ring_exchange_terms(std::span<const int> plaquette);
// B_p^2 as eight commuting Z strings with weights +-1/8.
OperatorSum rk_terms(std::span<const int> plaquette);

// A plaquette is flippable when its spins alternate around the cycle.
bool plaquette_flippable(std::uint64_t basis, const std::array<int, 4>& plaquette);
// Basis states with three up spins (bit 0) on every octahedron, ascending.
std::vector<std::uint64_t> enumerate_dimer_coverings(const CubicLattice& lattice);

/// Coverings grouped into classes connected by plaquette flips. Sectors are
/// sorted by size (largest first), ties by smallest member; sector 0 is the
/// reference sector.
struct DimerSectors {
  std::vector<std::uint64_t> coverings;
  std::vector<std::vector<std::uint64_t>> sectors;

  std::uint64_t reference_covering() const { return sectors.at(0).front(); }
  int sector_of(std::uint64_t covering) const;
};
DimerSectors dimer_sectors(const CubicLattice& lattice);

// Selects every covering instead of one sector.
inline constexpr int kAllCoverings = -1;

struct GaugeModel {
  CubicLattice lattice;
  double U = 1.0;
  double J = 1.0;
  double V = 1.0;
  double theta_constraint = 1.5707963267948966;
  double theta_rk = 1.5707963267948966;
  FlipSchedule schedule = FlipSchedule::RoundRobin;
  SublatticeColoring octahedron_colors;
  SublatticeColoring plaquette_colors;

  int n_system() const { return lattice.link_count; }
  // U sum (S^z_o)^2 - J sum B_p + V sum B_p^2 at the given V.
  OperatorSum hamiltonian(double V_value) const;
  OperatorSum hamiltonian() const { return hamiltonian(V); }
  std::vector<JumpOperatorSpec> constraint_jumps() const;
  std::vector<JumpOperatorSpec> rk_jumps() const;
  // Term indices in colour-group order.
  std::vector<int> octahedron_order() const;
  std::vector<int> plaquette_order() const;
};

GaugeModel make_gauge_model(int Lx, int Ly, int Lz, double U = 1.0, double J = 1.0, double V = 1.0);

// Uniform superposition over one sector (or every covering), on
// n_system + extra_qubits qubits.
StateVector rk_state(const DimerSectors& sectors, int n_system, int sector = 0, int extra_qubits = 0);
// Mean over octahedra of the probability that S^z_o != 0.
double charge_density(const StateVector& state, const CubicLattice& lattice);
// |<rk_s|psi>|^2 for one sector.
double rk_fidelity(const StateVector& state, const DimerSectors& sectors, int sector = 0);
// Sum over sectors of |<rk_s|psi>|^2: weight in the dark-state manifold.
double dark_state_fidelity(const StateVector& state, const DimerSectors& sectors);

// H restricted to a covering basis: -J per plaquette flip, V per flippable
// plaquette; the constraint term vanishes on coverings.
Eigen::MatrixXd sector_hamiltonian(const GaugeModel& model, const std::vector<std::uint64_t>& basis, double V_value);

struct GroundState {
  double energy = 0.0;
  StateVector state;
  // ||H psi - E psi|| evaluated with the full Pauli-sum Hamiltonian.
  double residual = 0.0;
};
GroundState exact_ground_state(const GaugeModel& model, const DimerSectors& sectors, double V_value, int sector = 0,
                               int extra_qubits = 0);

bool constraint_jump_step(StateVector& state, int control, std::span<const int> octahedron, double theta,
                          int flip_site, Rng& rng);
bool rk_jump_step(StateVector& state, int control, std::span<const int> plaquette, double theta, int flip_site,
                  Rng& rng);

enum class GaugeInitial { AllDown, Covering };
const char* gauge_initial_name(GaugeInitial g);
GaugeInitial gauge_initial_from_name(const std::string& name);

struct GaugeCoolOptions {
  int sweeps = 60;
  // Sweeps with only the constraint jumps before the RK jumps join in.
  int constraint_sweeps = 30;
  int trajectories = 100;
  GaugeInitial initial = GaugeInitial::AllDown;
  double tau = 2e-6;
  std::uint64_t seed = 1;
  int workers = 1;
};

// Observables per sweep: charge_density, rk_fidelity (reference sector),
// dark_fidelity.
std::vector<TrajectoryRecord> cool_gauge(const GaugeModel& model, const DimerSectors& sectors,
                                         const GaugeCoolOptions& options);

struct RampPoint {
  double phi_scale = 0.0;
  int step = 0;
  double time = 0.0;  // units of hbar / J
  double V_over_J = 0.0;
  double energy = 0.0;
  double exact_energy = 0.0;
};

// Trotterized ramp V(t) = J (1 - t J / (total_time hbar)) from the RK state of
// the reference sector with time step phi_scale (hbar/J); coefficients are
// sampled at step midpoints.
std::vector<RampPoint> adiabatic_ramp(const GaugeModel& model, const DimerSectors& sectors, double phi_scale,
                                      double total_time = 10.0);

}  // namespace rydsim
