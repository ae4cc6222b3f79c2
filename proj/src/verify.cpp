#include "rydsim/verify.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "rydsim/channels.hpp"
#include "rydsim/gates.hpp"
#include "rydsim/gauge.hpp"
#include "rydsim/rng.hpp"
#include "rydsim/rydphys.hpp"
#include "rydsim/toric.hpp"

namespace rydsim {

namespace {

using Mat = Eigen::MatrixXcd;

double op_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Mat>(m).singularValues()(0);
}

// sigma^+ raises to spin up, which is bit value 0.
Mat spin_op(int n, int site, char kind) {
  Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
  if (kind == '+') s(0, 1) = 1.0;
  if (kind == '-') s(1, 0) = 1.0;
  if (kind == 'z') {
    s(0, 0) = 1.0;
    s(1, 1) = -1.0;
  }
  const Eigen::Index d = Eigen::Index{1} << n;
  Mat out = Mat::Zero(d, d);
  const Eigen::Index bit = Eigen::Index{1} << site;
  for (Eigen::Index i = 0; i < d; ++i) {
    const int b = (i & bit) ? 1 : 0;
    for (int r = 0; r < 2; ++r) {
      if (s(r, b) == 0.0) continue;
      const Eigen::Index j = r ? (i | bit) : (i & ~bit);
      out(j, i) += s(r, b);
    }
  }
  return out;
}

// S1+ S2- S3+ S4- + h.c. on 4 qubits.
Mat ring_exchange_reference() {
  const Mat a = spin_op(4, 0, '+') * spin_op(4, 1, '-') * spin_op(4, 2, '+') * spin_op(4, 3, '-');
  return a + a.adjoint();
}

const std::vector<int>& plaquette4() {
  static const std::vector<int> p{0, 1, 2, 3};
  return p;
}

TermBuilder or_default(const TermBuilder& f, OperatorSum (*g)(std::span<const int>)) {
  return f ? f : TermBuilder(g);
}

Mat random_density(int n, std::uint64_t seed) {
  Rng rng(seed, 0);
  const Eigen::Index d = Eigen::Index{1} << n;
  Mat x(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) x(i, j) = cplx{rng.uniform() - 0.5, rng.uniform() - 0.5};
  }
  Mat rho = x * x.adjoint();
  return rho / rho.trace();
}

}  // namespace

double gate_identity_deviation(int samples, std::uint64_t seed) {
  Rng rng(seed, 1);
  const PauliString A = PauliString::uniform(plaquette4(), Pauli::X);
  const Mat Am = to_matrix(A, 4);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double phi = (2.0 * rng.uniform() - 1.0) * kPi;
    const Mat M = sequence_matrix(coherent_step_sequence(4, A, phi), 5);
    const Mat target = (cplx{0.0, phi} * Am).exp();
    const Mat block = M.topLeftCorner(16, 16);
    const cplx overlap = (target.adjoint() * block).trace();
    const cplx phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cplx{1.0};
    const double dev = op_norm(block - phase * target) + op_norm(M.bottomLeftCorner(16, 16));
    worst = std::max(worst, dev);
  }
  return worst;
}

double kraus_completeness_error(double theta) {
  std::vector<JumpOperatorSpec> specs(3);
  specs[0].region = Region::uniform(plaquette4(), Pauli::X);
  const std::vector<int> oct{0, 1, 2, 3, 4, 5};
  specs[1].region = Region::uniform(oct, Pauli::Z);
  specs[1].flip_letter = Pauli::X;
  specs[1].variant = JumpVariant::OctahedronConstraint;
  specs[2].region = Region::uniform(plaquette4(), Pauli::Z);
  specs[2].variant = JumpVariant::RkProjector;
  double worst = 0.0;
  for (auto& s : specs) {
    s.theta = theta;
    const auto [K0, K1] = kraus_pair(s, s.candidates().front());
    const Mat id = Mat::Identity(K0.rows(), K0.cols());
    worst = std::max(worst, op_norm(K0.adjoint() * K0 + K1.adjoint() * K1 - id));
  }
  return worst;
}

ReductionScaling lindblad_reduction_scaling(const std::vector<double>& thetas, std::uint64_t seed) {
  JumpOperatorSpec s;
  s.region = Region::uniform(plaquette4(), Pauli::X);
  const ScalingReport rep = verify_small_parameter_reduction(s, thetas, random_density(4, seed));
  return {rep.thetas, rep.defects, rep.exponent};
}

std::vector<ExpansionPoint> imperfect_step_expansion(const std::vector<double>& phis, double q) {
  const Region r = Region::uniform(plaquette4(), Pauli::X);
  const OperatorSum Q{{q, PauliString::single(0, Pauli::Z)}};
  const Mat A = to_matrix(r.product(), 4);
  const Mat Qm = to_matrix(Q, 4);
  std::vector<ExpansionPoint> out;
  for (double phi : phis) {
    const auto [C, D] = imperfect_step_kraus(r, Q, phi);
    const Mat ref = (cplx{0.0, phi} * (A + Qm)).exp() - 0.5 * phi * phi * Qm * Qm;
    out.push_back({phi, op_norm(C - ref), op_norm(D + cplx{0.0, phi} * Qm), op_norm(D - cplx{0.0, phi} * Qm)});
  }
  return out;
}

double constraint_decomposition_error() {
  const std::vector<int> oct{0, 1, 2, 3, 4, 5};
  Mat sz = Mat::Zero(64, 64);
  for (int k = 0; k < 6; ++k) sz += spin_op(6, k, 'z');
  return (to_matrix(constraint_terms(oct), 6) - sz * sz).cwiseAbs().maxCoeff();
}

double ring_exchange_decomposition_error(const TermBuilder& ring_exchange) {
  const auto f = or_default(ring_exchange, ring_exchange_terms);
  return (to_matrix(f(plaquette4()), 4) - ring_exchange_reference()).cwiseAbs().maxCoeff();
}

double rk_decomposition_error(const TermBuilder& rk) {
  const auto f = or_default(rk, rk_terms);
  const Mat B = ring_exchange_reference();
  return (to_matrix(f(plaquette4()), 4) - B * B).cwiseAbs().maxCoeff();
}

double projector_decomposition_error(const TermBuilder& ring_exchange, const TermBuilder& rk) {
  const auto fb = or_default(ring_exchange, ring_exchange_terms);
  const auto fn = or_default(rk, rk_terms);
  // (1/16)[sum B^(j) - sum N^(j)] with B_p = (1/8) sum B^(j), B_p^2 = (1/8) sum N^(j).
  OperatorSum c = fb(plaquette4()).scaled(0.5);
  c += fn(plaquette4()).scaled(-0.5);
  const Mat B = ring_exchange_reference();
  const Mat id = Mat::Identity(16, 16);
  return (to_matrix(c, 4) - 0.5 * (id - B) * B).cwiseAbs().maxCoeff();
}

double ub_sequence_error() {
  const Mat M = sequence_matrix(gate_UB_sequence(4, plaquette4()), 5);
  const Mat B = ring_exchange_reference();
  const Mat id = Mat::Identity(16, 16);
  const Mat U = (cplx{0.0, kPi / 2} * (id - B) * B).exp();
  // Control |1> block applies U, control |0> block is the identity.
  double err = (M.topLeftCorner(16, 16) - id).cwiseAbs().maxCoeff();
  err = std::max(err, (M.bottomRightCorner(16, 16) - U).cwiseAbs().maxCoeff());
  err = std::max(err, M.topRightCorner(16, 16).cwiseAbs().maxCoeff());
  return std::max(err, M.bottomLeftCorner(16, 16).cwiseAbs().maxCoeff());
}

double constraint_commutator_norm() {
  const CubicLattice lat = build_cubic(2, 2, 1);
  double worst = 0.0;
  for (const auto& o : lat.octahedra) {
    for (const auto& p : lat.plaquettes) {
      std::vector<int> sites(o.begin(), o.end());
      sites.insert(sites.end(), p.begin(), p.end());
      std::sort(sites.begin(), sites.end());
      sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
      if (sites.size() == o.size() + p.size()) continue;
      const Mat C = to_local_matrix(constraint_terms(o), sites);
      const Mat B = to_local_matrix(ring_exchange_terms(p), sites);
      const Mat N = to_local_matrix(rk_terms(p), sites);
      worst = std::max({worst, op_norm(C * B - B * C), op_norm(C * N - N * C)});
    }
  }
  return worst;
}

double engine_equivalence_sigmas(int L, int dense_trajectories, int walker_trajectories, int sweeps,
                                 std::uint64_t seed, int workers, bool coherent) {
  ToricModel model = make_toric_model(L);
  model.coherent = coherent;
  ToricCoolOptions o;
  o.sweeps = sweeps;
  o.seed = seed;
  o.workers = workers;
  o.trajectories = dense_trajectories;
  o.engine = ToricEngine::Dense;
  const AggregateSeries dense = aggregate(cool_toric(model, o));
  o.trajectories = walker_trajectories;
  o.engine = ToricEngine::Walker;
  o.seed = seed + 1;
  const AggregateSeries walker = aggregate(cool_toric(model, o));
  const double nd = dense.trajectories;
  const double nw = walker.trajectories;
  double worst = 0.0;
  for (std::size_t k = 0; k < dense.sweeps.size(); ++k) {
    const double diff = std::fabs(dense.mean[k][0] - walker.mean[k][0]);
    // Pooled variance: under the null both engines sample one distribution, and
    // a small ensemble with no anyons left has no usable variance of its own.
    const double sd = dense.stddev[k][0];
    const double sw = walker.stddev[k][0];
    const double pooled = ((nd - 1) * sd * sd + (nw - 1) * sw * sw) / (nd + nw - 2);
    const double se = std::sqrt(pooled * (1.0 / nd + 1.0 / nw));
    if (se == 0.0) {
      if (diff > 0.0) return INFINITY;
      continue;
    }
    worst = std::max(worst, diff / se);
  }
  return worst;
}

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  std::vector<CheckResult> out;
  auto below = [&](std::string name, std::string what, double v, double tol) {
    out.push_back({std::move(name), std::move(what), v, -1.0, tol, v < tol});
  };
  auto within = [&](std::string name, std::string what, double v, double lo, double hi) {
    out.push_back({std::move(name), std::move(what), v, lo, hi, v >= lo && v <= hi});
  };

  below("gate_identity", "coherent step vs exp(i phi A) on control |0>, 20 random phi", gate_identity_deviation(20, options.seed),
        1e-10);
  below("kraus_completeness", "K0^dag K0 + K1^dag K1 = 1 for all jump variants, theta = 0.7",
        kraus_completeness_error(0.7), 1e-12);
  const auto red = lindblad_reduction_scaling({0.2, 0.1, 0.05}, options.seed);
  within("lindblad_reduction_exponent", "log-log slope of ||channel - 1 - tau L|| in theta", red.exponent, 2.7, 1e9);

  const auto ex = imperfect_step_expansion({0.2, 0.1});
  within("imperfect_step_C_ratio", "C residual ratio phi = 0.2 / 0.1 (third order)",
         ex[0].c_residual / ex[1].c_residual, 6.4, 9.6);
  below("imperfect_step_D_leading", "||D + i phi Q|| / (phi |Q|) at phi = 0.1", ex[1].d_plus_residual / (0.1 * 0.1),
        1.0);
  within("imperfect_step_D_ratio", "D residual ratio phi = 0.2 / 0.1 (second order)",
         ex[0].d_plus_residual / ex[1].d_plus_residual, 3.2, 4.8);

  below("constraint_decomposition", "(S^z_o)^2 Ising form, max entry error", constraint_decomposition_error(), 1e-12);
  below("ring_exchange_decomposition", "B_p eight-string form, max entry error",
        ring_exchange_decomposition_error(options.ring_exchange), 1e-12);
  below("rk_decomposition", "B_p^2 eight-string form, max entry error", rk_decomposition_error(options.rk), 1e-12);
  below("projector_decomposition", "(1 - B_p) B_p / 2 sixteen-string form, max entry error",
        projector_decomposition_error(options.ring_exchange, options.rk), 1e-12);
  below("ub_sequence", "sixteen-factor U_B vs exp[i pi/2 (1 - B_p) B_p], max entry error", ub_sequence_error(), 1e-9);
  below("constraint_commutes", "[(S^z_o)^2, B_p] and [(S^z_o)^2, B_p^2] on the (2,2,1) lattice",
        constraint_commutator_norm(), 1e-12);

  const double tg = gate_time(2 * kPi * 1.2e9, 2 * kPi * 100e6);
  within("gate_time_ns", "T_gate at Delta = 2pi 1.2 GHz, Omega_p = 2pi 100 MHz", tg * 1e9, 316.8, 323.2);

  if (options.include_engine) {
    below("engine_equivalence_L2", "max |dense - walker| / pooled SE over 6 sweeps, 300 vs 20000 trajectories",
          engine_equivalence_sigmas(2, 300, 20000, 6, options.seed, options.workers), 3.0);
  }
  return out;
}

std::string verification_report(const std::vector<CheckResult>& checks) {
  std::ostringstream out;
  char buf[512];
  for (const auto& c : checks) {
    std::string bound;
    if (c.lower < 0.0) {
      std::snprintf(buf, sizeof buf, "< %.3g", c.upper);
    } else {
      std::snprintf(buf, sizeof buf, "in [%.3g, %.3g]", c.lower, c.upper);
    }
    bound = buf;
    std::snprintf(buf, sizeof buf, "%-4s %-30s measured=%.6g  pass if %s  (%s)\n", c.passed ? "PASS" : "FAIL",
                  c.name.c_str(), c.measured, bound.c_str(), c.what.c_str());
    out << buf;
  }
  return out.str();
}

bool all_passed(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

}  // namespace rydsim
