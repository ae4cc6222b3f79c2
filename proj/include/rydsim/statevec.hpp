#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rydsim/pauli.hpp"
#include "rydsim/rng.hpp"

namespace rydsim {

// Largest qubit count accepted by StateVector (2^26 amplitudes, 1 GiB).
inline constexpr int kStateCap = 26;

/// One gate of a fused block program (see StateVector::apply_block_program).
/// Every kind acts inside the blocks {i, i^c, i^F, i^c^F} spanned by the
/// control bit c and one flip mask F.
struct BlockOp {
  enum class Kind { ControlUnitary, ControlPhase, ControlledString, ControlledRotation, ControlledZPhases };
  Kind kind = Kind::ControlPhase;
  Eigen::Matrix2cd U = Eigen::Matrix2cd::Identity();  // ControlUnitary
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;  // string Z part, or the sites of ControlledZPhases
  cplx pre = 1.0;            // string prefactor
  double angle = 0.0;
  std::vector<cplx> table;   // ControlledZPhases: phase by popcount

  // U on the control qubit.
  static BlockOp control_unitary(const Eigen::Matrix2cd& U);
  // exp(i angle sigma^z_c).
  static BlockOp control_phase(double angle);
  // op conditioned on control = 1.
  static BlockOp controlled_string(const PauliString& op);
  // exp(i angle P) conditioned on control = 1.
  static BlockOp controlled_rotation(const PauliString& P, double angle);
  static BlockOp controlled_z_phases(std::span<const int> sites, double angle);
};

/// Dense amplitude vector over n qubits, qubit 0 being the least significant
/// bit of the basis label. Bit value 0 is spin up (sigma^z = +1).
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(int n, std::uint64_t basis_state = 0);
  static StateVector from_amplitudes(std::vector<cplx> amplitudes);

  int qubits() const { return n_; }
  std::size_t dim() const { return amp_.size(); }
  const std::vector<cplx>& amplitudes() const { return amp_; }
  std::vector<cplx>& amplitudes() { return amp_; }
  cplx operator[](std::size_t i) const { return amp_[i]; }

  double norm_squared() const;
  void normalize();

  // Throws std::invalid_argument if U deviates from unitarity by more than 1e-10.
  void apply_single_qubit(int q, const Eigen::Matrix2cd& U);
  void apply_pauli_string(const PauliString& op);
  // |v><v|_c (x) op + (1 - |v><v|_c) (x) 1, where v = control_value.
  void apply_controlled(int control, const PauliString& op, int control_value = 1);
  // Dense unitary on an ordered target list (local qubit k = targets[k]);
  // control < 0 means unconditional.
  void apply_local(std::span<const int> targets, const Eigen::MatrixXcd& U, int control = -1,
                   int control_value = 1);
  // exp(i angle P) for Hermitian P, optionally conditioned on control = 1.
  void apply_pauli_rotation(const PauliString& P, double angle, int control = -1);
  // Conditioned on control = 1: prod_{s in sites} exp(i angle sigma^z_s).
  void apply_controlled_z_phases(int control, std::span<const int> sites, double angle);

  // Applies ops in order with one pass over memory. Every string must flip
  // either nothing or exactly flip_mask, and none may touch the control.
  void apply_block_program(int control, std::uint64_t flip_mask, std::span<const BlockOp> ops);

  double probability_one(int q) const;
  // Projects q onto `value` and renormalizes; returns the branch probability.
  double project(int q, int value);
  int measure(int q, Rng& rng);
  // Born measurement followed by reset of q to |0>.
  int measure_and_reset(int q, Rng& rng);

  // <psi|P|psi> for Hermitian P; throws for non-Hermitian strings.
  double expectation(const PauliString& P) const;
  double expectation(const OperatorSum& H) const;
  cplx inner(const StateVector& other) const;  // <this|other>

  // Amplitude dump: magic "RYDSV001", uint32 n, uint64 count, then count
  // little-endian (re, im) float64 pairs.
  void write_binary(std::ostream& out) const;
  static StateVector read_binary(std::istream& in);

 private:
  void check_qubit(int q, const char* what) const;

  int n_ = 0;
  std::vector<cplx> amp_;
};

double fidelity(const StateVector& a, const StateVector& b);

/// Small-n density matrix used by the oracles.
struct DensityMatrix {
  int n = 0;
  Eigen::MatrixXcd rho;

  static DensityMatrix from_state(const StateVector& psi);
  static DensityMatrix maximally_mixed(int n);
  cplx trace() const { return rho.trace(); }
  bool is_valid(double tol = 1e-9) const;
  double expectation(const PauliString& P) const;
};

}  // namespace rydsim
