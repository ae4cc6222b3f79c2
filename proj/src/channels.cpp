#include "rydsim/channels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <Eigen/Eigenvalues>

#include "rydsim/gauge.hpp"

namespace rydsim {

namespace {

using Mat = Eigen::MatrixXcd;

int local_position(const std::vector<int>& sites, int site) {
  auto it = std::find(sites.begin(), sites.end(), site);
  if (it == sites.end()) throw std::invalid_argument("flip site is not part of the region");
  return static_cast<int>(it - sites.begin());
}

Mat identity(Eigen::Index d) { return Mat::Identity(d, d); }

Mat flip_matrix(const JumpOperatorSpec& spec, int flip_site) {
  const int pos = local_position(spec.region.sites, flip_site);
  std::vector<int> local(spec.region.size());
  for (std::size_t k = 0; k < local.size(); ++k) local[k] = static_cast<int>(k);
  return to_local_matrix(PauliString::single(pos, spec.flip_letter), local);
}

Mat hermitian_exp(const Mat& h, double phi) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const Eigen::VectorXcd ph = (cplx{0, phi} * es.eigenvalues().cast<cplx>()).array().exp();
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

// Embeds an operator on `sites` (local qubit k = sites[k]) into n qubits.
Mat embed(const Mat& local, const std::vector<int>& sites, int n) {
  const std::size_t d = std::size_t{1} << n;
  const Eigen::Index m = local.rows();
  std::uint64_t mask = 0;
  for (int s : sites) mask |= std::uint64_t{1} << s;
  Mat full = Mat::Zero(d, d);
  for (std::size_t col = 0; col < d; ++col) {
    Eigen::Index lc = 0;
    for (std::size_t k = 0; k < sites.size(); ++k) lc |= static_cast<Eigen::Index>((col >> sites[k]) & 1) << k;
    for (Eigen::Index r = 0; r < m; ++r) {
      const cplx v = local(r, lc);
      if (v == cplx{0, 0}) continue;
      std::uint64_t row = col & ~mask;
      for (std::size_t k = 0; k < sites.size(); ++k) row |= static_cast<std::uint64_t>((r >> k) & 1) << sites[k];
      full(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += v;
    }
  }
  return full;
}

Mat dissipator(const Mat& c, const Mat& rho) {
  const Mat cdc = c.adjoint() * c;
  return c * rho * c.adjoint() - 0.5 * (cdc * rho + rho * cdc);
}

}  // namespace

const char* jump_variant_name(JumpVariant v) {
  switch (v) {
    case JumpVariant::Standard: return "standard";
    case JumpVariant::OctahedronConstraint: return "octahedron_constraint";
    case JumpVariant::RkProjector: return "rk_projector";
  }
  return "?";
}

const char* flip_schedule_name(FlipSchedule s) { return s == FlipSchedule::Random ? "random" : "round_robin"; }

FlipSchedule flip_schedule_from_name(const std::string& name) {
  if (name == "random") return FlipSchedule::Random;
  if (name == "round_robin") return FlipSchedule::RoundRobin;
  throw std::invalid_argument("unknown flip schedule '" + name + "'");
}

int JumpOperatorSpec::flip_site(long sweep, int term, Rng& rng) const {
  const auto& c = candidates();
  if (c.empty()) throw std::invalid_argument("JumpOperatorSpec: no candidate flip sites");
  const auto k = static_cast<long>(c.size());
  if (schedule == FlipSchedule::Random) return c[rng.index(static_cast<std::uint64_t>(k))];
  return c[static_cast<std::size_t>(((sweep + term) % k + k) % k)];
}

PauliString JumpOperatorSpec::mapping_string() const {
  if (variant != JumpVariant::Standard) throw std::logic_error("mapping_string: only defined for the standard variant");
  const PauliString A = region.product();
  return excite ? A.negated() : A;
}

Mat mapping_operator(const JumpOperatorSpec& spec) {
  const auto k = static_cast<int>(spec.region.size());
  std::vector<int> local(k);
  for (int q = 0; q < k; ++q) local[q] = q;
  switch (spec.variant) {
    case JumpVariant::Standard: {
      const PauliString A = spec.mapping_string();
      std::vector<PauliString::Factor> f;
      for (const auto& factor : A.factors()) f.push_back({local_position(spec.region.sites, factor.site), factor.letter});
      return to_local_matrix(PauliString(std::move(f), A.phase()), local);
    }
    case JumpVariant::OctahedronConstraint: {
      const Eigen::Index d = Eigen::Index{1} << k;
      Mat P = Mat::Zero(d, d);
      for (Eigen::Index b = 0; b < d; ++b) {
        const int down = std::popcount(static_cast<std::uint64_t>(b));
        P(b, b) = std::polar(1.0, kPi / 6 * (k - 2 * down));
      }
      return P;
    }
    case JumpVariant::RkProjector: {
      if (k != 4) throw std::invalid_argument("mapping_operator: the RK variant needs a four-link plaquette");
      const Mat B = to_local_matrix(ring_exchange_terms(local), local);
      return hermitian_exp((identity(16) - B) * B, kPi / 2);
    }
  }
  throw std::logic_error("mapping_operator: unknown variant");
}

Mat jump_operator(const JumpOperatorSpec& spec, int flip_site) {
  const Mat Q = flip_matrix(spec, flip_site);
  const Eigen::Index d = Q.rows();
  switch (spec.variant) {
    case JumpVariant::Standard: return 0.5 * Q * (identity(d) - mapping_operator(spec));
    case JumpVariant::OctahedronConstraint: {
      const Mat P = mapping_operator(spec);
      return 0.25 * (identity(d) + P.adjoint()) * Q * (identity(d) - P);
    }
    case JumpVariant::RkProjector: {
      std::vector<int> local{0, 1, 2, 3};
      const Mat B = to_local_matrix(ring_exchange_terms(local), local);
      return 0.5 * Q * (identity(d) - B) * B;
    }
  }
  throw std::logic_error("jump_operator: unknown variant");
}

std::pair<Mat, Mat> kraus_pair(const JumpOperatorSpec& spec, int flip_site) {
  if (static_cast<int>(spec.region.size()) > kOracleCap) throw std::invalid_argument("kraus_pair: above the oracle cap");
  const Mat V = mapping_operator(spec);
  const Mat Vd = V.adjoint();
  const Eigen::Index d = V.rows();
  const Mat I = identity(d);
  const Mat S = std::cos(spec.theta) * I + cplx{0, std::sin(spec.theta)} * flip_matrix(spec, flip_site);
  Mat K0 = 0.25 * ((I + Vd) * (I + V) + (Vd - I) * S * (V - I));
  Mat K1 = 0.25 * ((Vd - I) * (I + V) + (I + Vd) * S * (V - I));
  return {std::move(K0), std::move(K1)};
}

GateSequence dissipative_sequence(int control, const JumpOperatorSpec& spec, int flip_site, const OperatorSum& Q,
                                  double error_phi) {
  GateSequence core_in, core_out;
  switch (spec.variant) {
    case JumpVariant::Standard: {
      const Gate g = many_body_gate(control, spec.mapping_string(), Q, error_phi);
      core_in.push(g);
      core_out.push(g);
      break;
    }
    case JumpVariant::OctahedronConstraint: {
      const Gate g = constraint_gate(control, spec.region.sites);
      core_in.push(g);
      core_out = core_in.inverse();
      break;
    }
    case JumpVariant::RkProjector:
      core_in = gate_UB_sequence(control, spec.region.sites);
      core_out = core_in;
      break;
  }
  GateSequence seq = mapping_around(control, core_in);
  seq.push(controlled_rotation(control, flip_site, spec.flip_letter, spec.theta));
  seq.append(mapping_around(control, core_out));
  seq.push(gate::MeasureReset{control});
  return seq;
}

bool dissipative_step(StateVector& state, int control, const JumpOperatorSpec& spec, int flip_site, Rng& rng,
                      const OperatorSum& Q, double error_phi) {
  require_control_zero(state, control, "dissipative_step");
  const auto outcomes = dissipative_sequence(control, spec, flip_site, Q, error_phi).apply(state, &rng);
  return outcomes.back() == 1;
}

double ModelSpec::energy(int term) const { return coherent.at(term).phi / tau; }

double ModelSpec::rate(int jump) const {
  const double t = jumps.at(jump).theta;
  return t * t / tau;
}

void ModelSpec::set_energy(int term, double E) { coherent.at(term).phi = E * tau; }

void ModelSpec::set_rate(int jump, double kappa) {
  if (kappa < 0) throw std::invalid_argument("set_rate: negative rate");
  jumps.at(jump).theta = std::sqrt(kappa * tau);
}

void ModelSpec::validate() const {
  auto check = [](std::vector<int> order, std::size_t n, const char* what) {
    std::sort(order.begin(), order.end());
    bool ok = order.size() == n;
    for (std::size_t k = 0; ok && k < n; ++k) ok = order[k] == static_cast<int>(k);
    if (!ok) throw std::invalid_argument(std::string("ModelSpec: ") + what + " schedule does not cover every term once");
  };
  check(coherent_order, coherent.size(), "coherent");
  check(jump_order, jumps.size(), "dissipative");
  if (!(tau > 0)) throw std::invalid_argument("ModelSpec: tau must be positive");
}

OperatorSum ModelSpec::hamiltonian() const {
  OperatorSum H;
  for (const auto& t : coherent) H += t.op.scaled(-t.phi / tau);
  return H;
}

Mat lindblad_generator(const ModelSpec& model, const Mat& rho) {
  const int n = model.n_system;
  if (n > kOracleCap) throw std::invalid_argument("lindblad_generator: above the oracle cap");
  const Mat H = to_matrix(model.hamiltonian(), n);
  Mat out = cplx{0, -1} * (H * rho - rho * H);
  for (std::size_t b = 0; b < model.jumps.size(); ++b) {
    const auto& spec = model.jumps[b];
    if (!spec.enabled) continue;
    const Mat c = embed(jump_operator(spec, spec.candidates().front()), spec.region.sites, n);
    out += model.rate(static_cast<int>(b)) * dissipator(c, rho);
  }
  return out;
}

ScalingReport verify_small_parameter_reduction(const JumpOperatorSpec& spec, const std::vector<double>& thetas,
                                               const Mat& rho) {
  ScalingReport rep;
  const int site = spec.candidates().front();
  for (double th : thetas) {
    JumpOperatorSpec s = spec;
    s.theta = th;
    const auto [K0, K1] = kraus_pair(s, site);
    if (K0.rows() != rho.rows()) throw std::invalid_argument("verify_small_parameter_reduction: rho size mismatch");
    const Mat channel = K0 * rho * K0.adjoint() + K1 * rho * K1.adjoint();
    // tau * kappa = theta^2.
    const Mat lind = th * th * dissipator(jump_operator(s, site), rho);
    rep.thetas.push_back(th);
    rep.defects.push_back((channel - rho - lind).norm());
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t k = 0; k < rep.thetas.size(); ++k) {
    if (!(rep.thetas[k] > 0) || !(rep.defects[k] > 0)) continue;
    const double x = std::log(rep.thetas[k]);
    const double y = std::log(rep.defects[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m >= 2) rep.exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return rep;
}

std::pair<Mat, Mat> imperfect_step_kraus(const Region& region, const OperatorSum& Q_local, double phi) {
  const int k = static_cast<int>(region.size());
  std::vector<PauliString::Factor> f;
  for (int q = 0; q < k; ++q) f.push_back({q, region.letters[q]});
  const GateSequence seq = coherent_step_sequence(k, PauliString(std::move(f)), phi, Q_local, phi);
  const Mat M = sequence_matrix(seq, k + 1);
  const Eigen::Index d = Eigen::Index{1} << k;
  return {M.block(0, 0, d, d), M.block(d, 0, d, d)};
}

int trotter_sweep(StateVector& state, const ModelSpec& model, long sweep, Rng& rng,
                  std::vector<std::pair<int, int>>* jump_log) {
  const int control = model.control();
  if (state.qubits() != model.total_qubits()) throw std::invalid_argument("trotter_sweep: register size mismatch");
  for (int idx : model.coherent_order) {
    const auto& term = model.coherent.at(idx);
    const OperatorSum Q = model.error.operator_for(term.sites);
    for (const auto& t : term.op.terms) {
      if (t.op.is_identity()) continue;  // global phase
      const double sign = t.op.phase() == 2 ? -1.0 : 1.0;
      GateSequence seq = coherent_step_sequence(control, t.op.with_phase(0), term.phi * t.coeff * sign, Q, model.error_phi);
      // An imperfect gate can leave the control excited; pump it back.
      if (!Q.terms.empty()) seq.push(gate::MeasureReset{control});
      seq.apply(state, &rng);
    }
  }
  int jumps = 0;
  for (int idx : model.jump_order) {
    const auto& spec = model.jumps.at(idx);
    if (!spec.enabled) continue;
    const int site = spec.flip_site(sweep, idx, rng);
    const OperatorSum Q =
        spec.variant == JumpVariant::Standard ? model.error.operator_for(spec.region.sites) : OperatorSum{};
    if (dissipative_step(state, control, spec, site, rng, Q, model.error_phi)) {
      ++jumps;
      if (jump_log) jump_log->emplace_back(idx, site);
    }
  }
  return jumps;
}

std::vector<int> sample_observables(StateVector& state, int control, const std::vector<PauliString>& regions,
                                    Rng& rng) {
  for (std::size_t a = 0; a < regions.size(); ++a) {
    if (!regions[a].is_hermitian()) throw std::invalid_argument("sample_observables: non-Hermitian observable");
    for (std::size_t b = a + 1; b < regions.size(); ++b) {
      if (!commutes(regions[a], regions[b])) throw std::invalid_argument("sample_observables: regions do not commute");
    }
  }
  require_control_zero(state, control, "sample_observables");
  std::vector<int> out;
  out.reserve(regions.size());
  for (const auto& P : regions) {
    GateSequence core;
    core.push(many_body_gate(control, P));
    const GateSequence G = mapping_around(control, core);
    G.apply(state);
    const int m = state.measure(control, rng);
    G.apply(state);
    out.push_back(m ? -1 : 1);
  }
  return out;
}

void TrajectoryRecord::record(long sweep, double time_s, std::vector<double> values) {
  if (values.size() != names.size()) throw std::invalid_argument("TrajectoryRecord: value count mismatch");
  if (!samples.empty() && time_s < samples.back().time_s) {
    throw std::invalid_argument("TrajectoryRecord: time stamps must be monotone");
  }
  samples.push_back({sweep, time_s, std::move(values)});
}

std::vector<TrajectoryRecord> run_trajectories(int count, int workers, std::uint64_t master_seed,
                                               const std::function<TrajectoryRecord(int, Rng&)>& body) {
  if (count < 0) throw std::invalid_argument("run_trajectories: negative trajectory count");
  std::vector<TrajectoryRecord> out(count);
  const int nw = std::max(1, std::min(workers, std::max(count, 1)));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const int t = next.fetch_add(1);
      if (t >= count) return;
      try {
        Rng rng(master_seed, static_cast<std::uint64_t>(t));
        TrajectoryRecord rec = body(t, rng);
        rec.id = t;
        rec.seed = stream_seed(master_seed, static_cast<std::uint64_t>(t));
        out[t] = std::move(rec);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
      }
    }
  };
  if (nw == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < nw; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

int default_workers() {
  if (const char* env = std::getenv("RYDSIM_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

AggregateSeries aggregate(const std::vector<TrajectoryRecord>& records) {
  AggregateSeries agg;
  if (records.empty()) return agg;
  const auto& first = records.front();
  agg.names = first.names;
  agg.trajectories = static_cast<int>(records.size());
  const std::size_t ns = first.samples.size();
  const std::size_t no = first.names.size();
  for (const auto& r : records) {
    if (r.samples.size() != ns || r.names != first.names) {
      throw std::invalid_argument("aggregate: trajectories do not share a sample grid");
    }
  }
  const double m = static_cast<double>(records.size());
  for (std::size_t k = 0; k < ns; ++k) {
    agg.sweeps.push_back(first.samples[k].sweep);
    agg.times.push_back(first.samples[k].time_s);
    std::vector<double> mean(no, 0.0), sd(no, 0.0), se(no, 0.0);
    for (std::size_t o = 0; o < no; ++o) {
      double s = 0.0;
      for (const auto& r : records) s += r.samples[k].values[o];
      mean[o] = s / m;
      double v = 0.0;
      for (const auto& r : records) {
        const double dv = r.samples[k].values[o] - mean[o];
        v += dv * dv;
      }
      sd[o] = records.size() > 1 ? std::sqrt(v / (m - 1)) : 0.0;
      se[o] = sd[o] / std::sqrt(m);
    }
    agg.mean.push_back(std::move(mean));
    agg.stddev.push_back(std::move(sd));
    agg.sem.push_back(std::move(se));
  }
  return agg;
}

}  // namespace rydsim
