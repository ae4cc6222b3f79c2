#pragma once

#include <cstdint>
#include <vector>

#include "rydsim/channels.hpp"
#include "rydsim/lattice.hpp"
#include "rydsim/statevec.hpp"

namespace rydsim {

// Walker heating probability per plaquette and sweep that reproduces the
// dense engine's late-time density at L = 2 with |Q| = 0.1 and phi = 0.5
// (see tools/calibrate_heating.cpp).
inline constexpr double kCalibratedHeating = 0.015;

struct ToricModel {
  ToricLattice lattice;
  double phi = 0.5;  // coherent phase per step; E0 = hbar phi / tau
  double theta = 1.5707963267948966;
  double tau = 2e-6;
  ErrorModel error;
  double p_heat = 0.0;
  bool heat_vertices = false;
  FlipSchedule schedule = FlipSchedule::Random;
  bool coherent = true;
  SublatticeColoring plaquette_colors;
  SublatticeColoring vertex_colors;

  double E0() const { return phi / tau; }
};

ToricModel make_toric_model(int L);

// One c_p per plaquette (W = X, Q = sigma^z) followed by one c_s per vertex
// (W = Z, Q = sigma^x).
std::vector<JumpOperatorSpec> toric_jump_specs(const ToricLattice& lattice, double theta = 1.5707963267948966,
                                               FlipSchedule schedule = FlipSchedule::Random);
// Coherent terms and jumps, both ordered plaquette colours first, then vertex
// colours.
ModelSpec toric_model_spec(const ToricModel& model);

/// Classical anyon record: 1 marks a -1 stabilizer.
struct AnyonConfig {
  std::vector<std::uint8_t> plaquette;
  std::vector<std::uint8_t> vertex;

  int plaquette_count() const;
  int vertex_count() const;
  bool even_parity() const;
};

// All spins down: every vertex clean, plaquettes in a uniform superposition.
StateVector init_all_down(const ToricLattice& lattice, int extra_qubits = 1);
// Classical counterpart of init_all_down: uniform over even plaquette
// configurations, vertices clean.
AnyonConfig sample_initial_anyons(const ToricLattice& lattice, Rng& rng);

double anyon_density(const AnyonConfig& config);
// Fraction of stabilizers with negative expectation value.
double anyon_density(const StateVector& state, const ToricLattice& lattice);
// T_eff = -E0 / (k_B ln n), returned in units of E0 / k_B.
double effective_temperature(double n, double E0 = 1.0);

// Moves every anyon across its scheduled link (annihilating on contact), cell
// by cell in colour order with a random order inside each colour, then heats:
// each plaquette (and vertex if heat_vertices) toggles itself and a random
// neighbour with probability p_heat.
void walker_sweep(AnyonConfig& config, const ToricModel& model, long sweep, Rng& rng);

enum class ToricEngine { Dense, Walker };
const char* toric_engine_name(ToricEngine e);
ToricEngine toric_engine_from_name(const std::string& name);

struct ToricCoolOptions {
  int sweeps = 30;
  int trajectories = 1000;
  ToricEngine engine = ToricEngine::Dense;
  std::uint64_t seed = 1;
  int workers = 1;
};

// Observables per sweep: anyon_density, plaquette_density, vertex_density.
// The dense engine Born-samples every stabilizer through G after each sweep.
std::vector<TrajectoryRecord> cool_toric(const ToricModel& model, const ToricCoolOptions& options);

}  // namespace rydsim
