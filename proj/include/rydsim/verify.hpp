#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rydsim/pauli.hpp"

namespace rydsim {

struct CheckResult {
  std::string name;
  std::string what;
  double measured = 0.0;
  // Passing region: measured < upper (lower < 0) or lower <= measured <= upper.
  double lower = -1.0;
  double upper = 0.0;
  bool passed = false;
};

// Largest operator-norm deviation of the gate-level coherent step on 4 system
// qubits + control from exp(i phi A) on the control-|0> block (global phase
// removed), plus the norm of the block that leaks into control |1>.
double gate_identity_deviation(int samples, std::uint64_t seed);

// Largest ||K0^dag K0 + K1^dag K1 - 1|| over the standard, constraint and RK
// jump variants.
double kraus_completeness_error(double theta);

struct ReductionScaling {
  std::vector<double> thetas;
  std::vector<double> defects;
  double exponent = 0.0;
};
// Standard plaquette jump on a random 4-qubit density matrix.
ReductionScaling lindblad_reduction_scaling(const std::vector<double>& thetas, std::uint64_t seed);

struct ExpansionPoint {
  double phi = 0.0;
  double c_residual = 0.0;       // ||C - (exp[i phi (A+Q)] - phi^2 Q^2 / 2)||
  double d_plus_residual = 0.0;  // ||D + i phi Q||
  double d_minus_residual = 0.0; // ||D - i phi Q||
};
// Kraus operators of the imperfect coherent step with Q = q sigma^z on the
// first plaquette site.
std::vector<ExpansionPoint> imperfect_step_expansion(const std::vector<double>& phis, double q = 0.1);

using TermBuilder = std::function<OperatorSum(std::span<const int>)>;

// Max-entry errors of the operator decompositions against matrices built from
// spin raising/lowering operators.
double constraint_decomposition_error();
double ring_exchange_decomposition_error(const TermBuilder& ring_exchange);
double rk_decomposition_error(const TermBuilder& rk);
double projector_decomposition_error(const TermBuilder& ring_exchange, const TermBuilder& rk);
double ub_sequence_error();
// Largest commutator norm between (S^z_o)^2 and B_p / B_p^2 on the (2,2,1)
// lattice, restricted to a shared neighbourhood.
double constraint_commutator_norm();

// Largest |mean_dense - mean_walker| / (pooled two-sample standard error) over
// sweeps, on the toric code with perfect gates.
double engine_equivalence_sigmas(int L, int dense_trajectories, int walker_trajectories, int sweeps,
                                 std::uint64_t seed, int workers, bool coherent = true);

struct VerifyOptions {
  TermBuilder ring_exchange;  // defaults to ring_exchange_terms
  TermBuilder rk;             // defaults to rk_terms
  bool include_engine = true;
  std::uint64_t seed = 1;
  int workers = 1;
};

std::vector<CheckResult> run_verification(const VerifyOptions& options = {});
std::string verification_report(const std::vector<CheckResult>& checks);
bool all_passed(const std::vector<CheckResult>& checks);

}  // namespace rydsim
