#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rydsim/pauli.hpp"
#include "rydsim/rng.hpp"
#include "rydsim/statevec.hpp"

namespace rydsim {

inline constexpr double kPi = 3.14159265358979323846;

// U_c(alpha) = exp(-i alpha sigma^y / 2); U_c(pi/2) is the mapping pulse.
Eigen::Matrix2cd control_pulse(double alpha = kPi / 2);

/// Sites with one Hermitian letter each; the product of the letters is the
/// many-body operator prod_j W_j.
struct Region {
  std::vector<int> sites;
  std::vector<Pauli> letters;

  static Region uniform(std::span<const int> sites, Pauli letter);
  PauliString product() const;
  std::size_t size() const { return sites.size(); }
};

/// Coherent gate error of the imperfect gate
///   U~_g = |0><0| (x) exp(i phi Q) + |1><1| (x) A.
/// By default Q = magnitude * letter on the lowest-indexed region site; a
/// custom Q is given on region-local indices (site k = k-th region site).
struct ErrorModel {
  bool enabled = false;
  double magnitude = 0.1;
  Pauli letter = Pauli::Z;
  std::optional<OperatorSum> custom;

  static ErrorModel none() { return {}; }
  static ErrorModel single_site(double magnitude, Pauli letter = Pauli::Z);
  // Q for a concrete region; empty when disabled.
  OperatorSum operator_for(std::span<const int> region_sites) const;
};

// exp(i phi Q) for Hermitian Q, on the ordered support of Q.
Eigen::MatrixXcd exp_i_hermitian(const OperatorSum& Q, double phi, std::vector<int>& support);

namespace gate {

struct SingleQubit {
  int qubit;
  Eigen::Matrix2cd U;
};
// |1><1|_c (x) op + |0><0|_c (x) 1.
struct ControlledPauli {
  int control;
  PauliString op;
};
// |0><0|_c (x) exp(i phi Q) + |1><1|_c (x) op.
struct ImperfectControlledPauli {
  int control;
  PauliString op;
  OperatorSum Q;
  double phi;
};
// exp(i angle P), conditioned on control = 1 when control >= 0.
struct PauliRotation {
  int control;
  PauliString P;
  double angle;
};
// |1><1|_c (x) prod_s exp(i angle sigma^z_s).
struct ControlledZPhases {
  int control;
  std::vector<int> sites;
  double angle;
};
struct MeasureReset {
  int qubit;
};

}  // namespace gate

using Gate = std::variant<gate::SingleQubit, gate::ControlledPauli, gate::ImperfectControlledPauli,
                          gate::PauliRotation, gate::ControlledZPhases, gate::MeasureReset>;

/// Ordered list of primitive gates; the first element is applied first.
class GateSequence {
 public:
  GateSequence() = default;

  void push(Gate g) { gates_.push_back(std::move(g)); }
  void append(const GateSequence& other);
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool is_unitary() const;

  // Mathematical inverse; throws if the sequence contains a measurement.
  GateSequence inverse() const;
  // Applies every gate; measurements need an rng and their outcomes are
  // returned in order. Runs of gates that share a control qubit and a flip
  // mask are fused into one pass over the amplitudes.
  std::vector<int> apply(StateVector& state, Rng* rng = nullptr) const;
  // The same without fusion, one kernel call per gate.
  std::vector<int> apply_gatewise(StateVector& state, Rng* rng = nullptr) const;

  // One descriptor per line, doubles printed with %.17g.
  std::string to_text() const;

 private:
  static void apply_gate(StateVector& state, const Gate& g, Rng* rng, std::vector<int>& outcomes);

  std::vector<Gate> gates_;
};

// Dense matrix of a unitary sequence on n qubits (oracle cap applies).
Eigen::MatrixXcd sequence_matrix(const GateSequence& seq, int n);

// The many-body gate, perfect or with the error operator Q (empty Q = perfect).
Gate many_body_gate(int control, const PauliString& A, const OperatorSum& Q = {}, double phi = 0.0);

// G = U_c^-1 U_g U_c around an arbitrary controlled core.
GateSequence mapping_around(int control, const GateSequence& core);
GateSequence mapping_G(int control, const Region& region, const OperatorSum& Q = {}, double phi = 0.0);

void apply_Ug(StateVector& state, int control, const Region& region);
void apply_Ug_imperfect(StateVector& state, int control, const Region& region, double phi, const OperatorSum& Q);

// G^-1 exp(i phi sigma^z_c) G, with G^-1 realised by replaying the physical G.
GateSequence coherent_step_sequence(int control, const PauliString& A, double phi, const OperatorSum& Q = {},
                                    double error_phi = 0.0);
// Evolves the system by exp(i phi prod W); requires the control in |0>.
void coherent_step(StateVector& state, int control, const Region& region, double phi);
// exp(i phi H) for a sum of mutually commuting Pauli strings, one coherent
// step per term.
void coherent_step(StateVector& state, int control, const OperatorSum& H, double phi);

Gate controlled_rotation(int control, int target, Pauli letter, double theta);
void controlled_rotation_UZ(StateVector& state, int control, int target, double theta);

// |1><1|_c (x) prod_{six links} exp(i pi/6 sigma^z).
Gate constraint_gate(int control, std::span<const int> octahedron);
void apply_constraint_gate(StateVector& state, int control, std::span<const int> octahedron);

// The sixteen signed strings C_j with (1/2)(1 - B_p) B_p = (1/16) sum_j C_j.
std::vector<PauliString> ub_strings(std::span<const int> plaquette);
// U_B = |1><1|_c (x) exp[i pi/2 (1 - B_p) B_p] as the sixteen-factor product
//   prod_j exp(i pi/32 C_j) G_j exp(-i pi/32 sigma^z_c) G_j.
GateSequence gate_UB_sequence(int control, std::span<const int> plaquette);
void gate_UB(StateVector& state, int control, std::span<const int> plaquette);

// Throws std::invalid_argument when the control qubit is not in |0>.
void require_control_zero(const StateVector& state, int control, const char* what, double tol = 1e-12);

}  // namespace rydsim
