#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "rydsim/gates.hpp"
#include "rydsim/pauli.hpp"
#include "rydsim/rng.hpp"
#include "rydsim/statevec.hpp"

namespace rydsim {

enum class JumpVariant { Standard, OctahedronConstraint, RkProjector };
enum class FlipSchedule { RoundRobin, Random };

const char* jump_variant_name(JumpVariant v);
const char* flip_schedule_name(FlipSchedule s);
FlipSchedule flip_schedule_from_name(const std::string& name);

/// One engineered dissipative term.
///
/// Standard:             c = 1/2 Q_i (1 - prod W)
/// OctahedronConstraint: c = 1/4 [1 + P^dag] sigma^x_i [1 - P],  P = prod exp(i pi/6 sigma^z)
/// RkProjector:          c = 1/2 sigma^z_i (1 - B_p) B_p
/// The mapping operator V (A_p, P or E = exp[i pi/2 (1 - B_p) B_p]) is what the
/// controlled gate inside G applies.
struct JumpOperatorSpec {
  Region region;
  Pauli flip_letter = Pauli::Z;
  // Candidate sites for the flipped spin i; empty means the region sites.
  std::vector<int> flip_sites;
  double theta = kPi / 2;
  JumpVariant variant = JumpVariant::Standard;
  FlipSchedule schedule = FlipSchedule::RoundRobin;
  bool enabled = true;
  // Pump into the -1 eigenspace instead (standard variant only).
  bool excite = false;

  const std::vector<int>& candidates() const { return flip_sites.empty() ? region.sites : flip_sites; }
  // Site flipped in `sweep` for term number `term`; round robin staggers terms.
  int flip_site(long sweep, int term, Rng& rng) const;
  // The operator mapped onto the control; only for the standard variant.
  PauliString mapping_string() const;
};

// Dense matrices on the local space of spec.region.sites (local k = sites[k]);
// the flip site must lie in the region.
Eigen::MatrixXcd mapping_operator(const JumpOperatorSpec& spec);
Eigen::MatrixXcd jump_operator(const JumpOperatorSpec& spec, int flip_site);
// Kraus pair (K0 = no jump, K1 = jump) of one dissipative step:
//   K0 = 1/4 [(1 + V^dag)(1 + V) + (V^dag - 1) S (V - 1)]
//   K1 = 1/4 [(V^dag - 1)(1 + V) + (1 + V^dag) S (V - 1)],  S = exp(i theta Q_i).
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> kraus_pair(const JumpOperatorSpec& spec, int flip_site);

// Gate-level dissipative step: G, controlled exp(i theta Q_i), G^-1,
// measure and reset. The error operator applies to standard-variant gates.
GateSequence dissipative_sequence(int control, const JumpOperatorSpec& spec, int flip_site,
                                  const OperatorSum& Q = {}, double error_phi = 0.0);
// Returns true on a jump (control measured in |1>).
bool dissipative_step(StateVector& state, int control, const JumpOperatorSpec& spec, int flip_site, Rng& rng,
                      const OperatorSum& Q = {}, double error_phi = 0.0);

struct CoherentTerm {
  OperatorSum op;  // mutually commuting strings
  double phi = 0.0;
  std::vector<int> sites;  // region for the error operator
  std::string label;
};

/// A full stroboscopic program. Each coherent term contributes
/// H_a = -(hbar phi_a / tau) op_a, each jump the rate kappa_b = theta_b^2 / tau.
/// Units: hbar = 1, energies in rad/s, tau in seconds.
struct ModelSpec {
  int n_system = 0;
  std::vector<CoherentTerm> coherent;
  std::vector<JumpOperatorSpec> jumps;
  double tau = 2e-6;
  ErrorModel error;
  // Phase phi of the imperfect gate, used for every many-body gate.
  double error_phi = 0.5;
  // Application order within a sweep (term indices).
  std::vector<int> coherent_order;
  std::vector<int> jump_order;

  int control() const { return n_system; }
  int total_qubits() const { return n_system + 1; }
  double energy(int term) const;
  double rate(int jump) const;
  void set_energy(int term, double E);
  void set_rate(int jump, double kappa);
  // Throws when an order list is not a permutation of its term list.
  void validate() const;
  OperatorSum hamiltonian() const;
};

// L(rho) = -i[H, rho] + sum kappa (c rho c^dag - 1/2 {c^dag c, rho}), with the
// jump operators evaluated at their first candidate flip site.
Eigen::MatrixXcd lindblad_generator(const ModelSpec& model, const Eigen::MatrixXcd& rho);

struct ScalingReport {
  std::vector<double> thetas;
  std::vector<double> defects;
  double exponent = 0.0;  // least-squares slope of log defect vs log theta
};
// ||channel(rho) - rho - tau L(rho)|| (Frobenius) for each theta, where the
// channel is the Kraus pair of `spec` and L has rate theta^2/tau.
ScalingReport verify_small_parameter_reduction(const JumpOperatorSpec& spec, const std::vector<double>& thetas,
                                               const Eigen::MatrixXcd& rho);

// Kraus operators C (control ends in |0>) and D (|1>) of the imperfect
// coherent step, read off the simulated gate sequence on region + control.
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> imperfect_step_kraus(const Region& region, const OperatorSum& Q_local,
                                                                   double phi);

// One Trotter sweep: coherent terms then jumps in schedule order. Returns the
// number of jumps.
int trotter_sweep(StateVector& state, const ModelSpec& model, long sweep, Rng& rng,
                  std::vector<std::pair<int, int>>* jump_log = nullptr);

// Born samples (+1 / -1) of commuting Hermitian strings via G, control
// measurement and G^-1. Collapses the state.
std::vector<int> sample_observables(StateVector& state, int control, const std::vector<PauliString>& regions,
                                    Rng& rng);

struct ObservableSample {
  long sweep = 0;
  double time_s = 0.0;
  std::vector<double> values;
};

struct JumpEvent {
  long sweep;
  int term;
  int site;
};

struct TrajectoryRecord {
  int id = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> names;
  std::vector<ObservableSample> samples;
  std::vector<JumpEvent> jumps;

  void record(long sweep, double time_s, std::vector<double> values);
};

struct AggregateSeries {
  std::vector<std::string> names;
  std::vector<long> sweeps;
  std::vector<double> times;
  // mean[k][o] and its standard error sem[k][o] for sample k, observable o.
  std::vector<std::vector<double>> mean;
  std::vector<std::vector<double>> sem;
  std::vector<std::vector<double>> stddev;
  int trajectories = 0;
};

// Runs `count` independent trajectories on up to `workers` threads. Trajectory
// t gets Rng(master_seed, t); results are ordered by id.
std::vector<TrajectoryRecord> run_trajectories(int count, int workers, std::uint64_t master_seed,
                                               const std::function<TrajectoryRecord(int, Rng&)>& body);
// Worker count from RYDSIM_WORKERS, else the hardware concurrency.
int default_workers();
// Means over trajectories in id order; all records must share the sample grid.
AggregateSeries aggregate(const std::vector<TrajectoryRecord>& records);

}  // namespace rydsim
