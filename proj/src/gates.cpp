#include "rydsim/gates.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "rydsim/gauge.hpp"

namespace rydsim {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_control_outside(int control, const PauliString& op, const char* what) {
  if (control < 0) throw std::invalid_argument(std::string(what) + ": control index must be non-negative");
  if (op.at(control) != Pauli::I) throw std::invalid_argument(std::string(what) + ": control inside the region");
}

}  // namespace

Eigen::Matrix2cd control_pulse(double alpha) {
  const double c = std::cos(alpha / 2);
  const double s = std::sin(alpha / 2);
  Eigen::Matrix2cd U;
  U << c, -s, s, c;
  return U;
}

Region Region::uniform(std::span<const int> sites, Pauli letter) {
  Region r;
  r.sites.assign(sites.begin(), sites.end());
  r.letters.assign(sites.size(), letter);
  return r;
}

PauliString Region::product() const {
  if (sites.size() != letters.size()) throw std::invalid_argument("Region: sites and letters differ in length");
  std::vector<PauliString::Factor> f;
  for (std::size_t k = 0; k < sites.size(); ++k) {
    for (std::size_t m = 0; m < k; ++m) {
      if (sites[m] == sites[k]) throw std::invalid_argument("Region: repeated site");
    }
    f.push_back({sites[k], letters[k]});
  }
  return PauliString(std::move(f));
}

ErrorModel ErrorModel::single_site(double magnitude, Pauli letter) {
  ErrorModel e;
  e.enabled = true;
  e.magnitude = magnitude;
  e.letter = letter;
  return e;
}

OperatorSum ErrorModel::operator_for(std::span<const int> region_sites) const {
  OperatorSum Q;
  if (!enabled || region_sites.empty()) return Q;
  if (custom) {
    for (const auto& t : custom->terms) {
      std::vector<PauliString::Factor> f;
      for (const auto& factor : t.op.factors()) {
        if (factor.site >= static_cast<int>(region_sites.size())) {
          throw std::invalid_argument("ErrorModel: custom Q acts outside the region");
        }
        f.push_back({region_sites[factor.site], factor.letter});
      }
      Q.add(t.coeff, PauliString(std::move(f), t.op.phase()));
    }
  } else {
    int lowest = region_sites[0];
    for (int s : region_sites) lowest = std::min(lowest, s);
    Q.add(magnitude, PauliString::single(lowest, letter));
  }
  if (!Q.is_hermitian()) throw std::invalid_argument("ErrorModel: Q must be Hermitian");
  return Q;
}

Eigen::MatrixXcd exp_i_hermitian(const OperatorSum& Q, double phi, std::vector<int>& support) {
  if (!Q.is_hermitian()) throw std::invalid_argument("exp_i_hermitian: Q must be Hermitian");
  support = Q.support();
  const Eigen::MatrixXcd h = to_local_matrix(Q, support);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const Eigen::VectorXcd phases = (cplx{0, phi} * es.eigenvalues().cast<cplx>()).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

void GateSequence::append(const GateSequence& other) {
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
}

bool GateSequence::is_unitary() const {
  for (const auto& g : gates_) {
    if (std::holds_alternative<gate::MeasureReset>(g)) return false;
  }
  return true;
}

GateSequence GateSequence::inverse() const {
  GateSequence inv;
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
    inv.push(std::visit(
        overloaded{
            [](const gate::SingleQubit& g) -> Gate { return gate::SingleQubit{g.qubit, g.U.adjoint()}; },
            [](const gate::ControlledPauli& g) -> Gate { return gate::ControlledPauli{g.control, g.op.adjoint()}; },
            [](const gate::ImperfectControlledPauli& g) -> Gate {
              return gate::ImperfectControlledPauli{g.control, g.op.adjoint(), g.Q, -g.phi};
            },
            [](const gate::PauliRotation& g) -> Gate { return gate::PauliRotation{g.control, g.P, -g.angle}; },
            [](const gate::ControlledZPhases& g) -> Gate {
              return gate::ControlledZPhases{g.control, g.sites, -g.angle};
            },
            [](const gate::MeasureReset&) -> Gate {
              throw std::logic_error("GateSequence::inverse: measurement is not invertible");
            },
        },
        *it));
  }
  return inv;
}

namespace {

// The block form of a gate, when it has one: its control qubit, its flip mask
// and the fused op.
bool as_block_op(const Gate& g, int& control, std::uint64_t& flip, BlockOp& op) {
  if (const auto* x = std::get_if<gate::SingleQubit>(&g)) {
    control = x->qubit;
    flip = 0;
    op = BlockOp::control_unitary(x->U);
    return true;
  }
  if (const auto* x = std::get_if<gate::ControlledPauli>(&g)) {
    if (x->control < 0) return false;
    control = x->control;
    flip = x->op.x_mask();
    op = BlockOp::controlled_string(x->op);
    return true;
  }
  if (const auto* x = std::get_if<gate::ImperfectControlledPauli>(&g)) {
    if (x->control < 0 || (!x->Q.terms.empty() && x->phi != 0.0)) return false;
    control = x->control;
    flip = x->op.x_mask();
    op = BlockOp::controlled_string(x->op);
    return true;
  }
  if (const auto* x = std::get_if<gate::PauliRotation>(&g)) {
    if (x->control >= 0) {
      control = x->control;
      flip = x->P.x_mask();
      op = BlockOp::controlled_rotation(x->P, x->angle);
      return true;
    }
    if (x->P.weight() == 1 && x->P.factors()[0].letter == Pauli::Z && x->P.phase() % 2 == 0) {
      control = x->P.factors()[0].site;
      flip = 0;
      op = BlockOp::control_phase(x->P.phase() == 0 ? x->angle : -x->angle);
      return true;
    }
    return false;
  }
  if (const auto* x = std::get_if<gate::ControlledZPhases>(&g)) {
    if (x->control < 0) return false;
    control = x->control;
    flip = 0;
    op = BlockOp::controlled_z_phases(x->sites, x->angle);
    return true;
  }
  return false;
}

}  // namespace

std::vector<int> GateSequence::apply(StateVector& state, Rng* rng) const {
  std::vector<int> outcomes;
  std::size_t k = 0;
  while (k < gates_.size()) {
    // Gather the longest run sharing one control and one flip mask.
    int control = -1;
    std::uint64_t flip = 0;
    std::vector<BlockOp> ops;
    std::size_t end = k;
    for (; end < gates_.size(); ++end) {
      int c = -1;
      std::uint64_t f = 0;
      BlockOp op;
      if (!as_block_op(gates_[end], c, f, op)) break;
      if (end > k && c != control) break;
      if (f != 0 && flip != 0 && f != flip) break;
      if (c < 0 || c >= state.qubits()) break;
      control = c;
      if (f != 0) flip = f;
      ops.push_back(std::move(op));
    }
    if (end - k >= 2) {
      state.apply_block_program(control, flip, ops);
      k = end;
      continue;
    }
    apply_gate(state, gates_[k], rng, outcomes);
    ++k;
  }
  return outcomes;
}

std::vector<int> GateSequence::apply_gatewise(StateVector& state, Rng* rng) const {
  std::vector<int> outcomes;
  for (const auto& g : gates_) apply_gate(state, g, rng, outcomes);
  return outcomes;
}

void GateSequence::apply_gate(StateVector& state, const Gate& g, Rng* rng, std::vector<int>& outcomes) {
  std::visit(overloaded{
                 [&](const gate::SingleQubit& x) { state.apply_single_qubit(x.qubit, x.U); },
                 [&](const gate::ControlledPauli& x) { state.apply_controlled(x.control, x.op, 1); },
                 [&](const gate::ImperfectControlledPauli& x) {
                   state.apply_controlled(x.control, x.op, 1);
                   if (!x.Q.terms.empty() && x.phi != 0.0) {
                     std::vector<int> support;
                     const auto theta = exp_i_hermitian(x.Q, x.phi, support);
                     state.apply_local(support, theta, x.control, 0);
                   }
                 },
                 [&](const gate::PauliRotation& x) { state.apply_pauli_rotation(x.P, x.angle, x.control); },
                 [&](const gate::ControlledZPhases& x) { state.apply_controlled_z_phases(x.control, x.sites, x.angle); },
                 [&](const gate::MeasureReset& x) {
                   if (!rng) throw std::invalid_argument("GateSequence::apply: measurement needs an rng");
                   outcomes.push_back(state.measure_and_reset(x.qubit, *rng));
                 },
             },
             g);
}

std::string GateSequence::to_text() const {
  std::ostringstream out;
  for (const auto& g : gates_) {
    std::visit(overloaded{
                   [&](const gate::SingleQubit& x) {
                     out << "U1 q=" << x.qubit;
                     for (int r = 0; r < 2; ++r) {
                       for (int c = 0; c < 2; ++c) {
                         out << ' ' << fmt(x.U(r, c).real()) << ',' << fmt(x.U(r, c).imag());
                       }
                     }
                   },
                   [&](const gate::ControlledPauli& x) { out << "CP c=" << x.control << " op=" << x.op.to_string(); },
                   [&](const gate::ImperfectControlledPauli& x) {
                     out << "CPQ c=" << x.control << " phi=" << fmt(x.phi) << " op=" << x.op.to_string() << " Q=";
                     for (std::size_t k = 0; k < x.Q.terms.size(); ++k) {
                       out << (k ? ";" : "") << fmt(x.Q.terms[k].coeff) << '*' << x.Q.terms[k].op.to_string();
                     }
                   },
                   [&](const gate::PauliRotation& x) {
                     out << "ROT c=" << x.control << " a=" << fmt(x.angle) << " P=" << x.P.to_string();
                   },
                   [&](const gate::ControlledZPhases& x) {
                     out << "CZP c=" << x.control << " a=" << fmt(x.angle) << " sites=";
                     for (std::size_t k = 0; k < x.sites.size(); ++k) out << (k ? "," : "") << x.sites[k];
                   },
                   [&](const gate::MeasureReset& x) { out << "MR q=" << x.qubit; },
               },
               g);
    out << '\n';
  }
  return out.str();
}

Eigen::MatrixXcd sequence_matrix(const GateSequence& seq, int n) {
  if (!seq.is_unitary()) throw std::invalid_argument("sequence_matrix: sequence contains measurements");
  if (n > kOracleCap) throw std::invalid_argument("sequence_matrix: above the oracle cap");
  const std::size_t d = std::size_t{1} << n;
  Eigen::MatrixXcd M(d, d);
  for (std::size_t col = 0; col < d; ++col) {
    StateVector s(n, col);
    seq.apply(s);
    for (std::size_t row = 0; row < d; ++row) M(row, col) = s[row];
  }
  return M;
}

Gate many_body_gate(int control, const PauliString& A, const OperatorSum& Q, double phi) {
  check_control_outside(control, A, "many_body_gate");
  if (Q.terms.empty() || phi == 0.0) return gate::ControlledPauli{control, A};
  if (!Q.is_hermitian()) throw std::invalid_argument("many_body_gate: Q must be Hermitian");
  for (int s : Q.support()) {
    if (s == control) throw std::invalid_argument("many_body_gate: Q acts on the control");
  }
  return gate::ImperfectControlledPauli{control, A, Q, phi};
}

GateSequence mapping_around(int control, const GateSequence& core) {
  GateSequence seq;
  seq.push(gate::SingleQubit{control, control_pulse()});
  seq.append(core);
  seq.push(gate::SingleQubit{control, control_pulse().adjoint()});
  return seq;
}

GateSequence mapping_G(int control, const Region& region, const OperatorSum& Q, double phi) {
  GateSequence core;
  core.push(many_body_gate(control, region.product(), Q, phi));
  return mapping_around(control, core);
}

void apply_Ug(StateVector& state, int control, const Region& region) {
  const auto A = region.product();
  check_control_outside(control, A, "apply_Ug");
  state.apply_controlled(control, A, 1);
}

void apply_Ug_imperfect(StateVector& state, int control, const Region& region, double phi, const OperatorSum& Q) {
  GateSequence seq;
  seq.push(many_body_gate(control, region.product(), Q, phi));
  seq.apply(state);
}

GateSequence coherent_step_sequence(int control, const PauliString& A, double phi, const OperatorSum& Q,
                                    double error_phi) {
  GateSequence core;
  core.push(many_body_gate(control, A, Q, error_phi));
  const GateSequence G = mapping_around(control, core);
  GateSequence seq = G;
  seq.push(gate::PauliRotation{-1, PauliString::single(control, Pauli::Z), phi});
  seq.append(G);
  return seq;
}

void require_control_zero(const StateVector& state, int control, const char* what, double tol) {
  if (state.probability_one(control) > tol) {
    throw std::invalid_argument(std::string(what) + ": control qubit is not in |0>");
  }
}

void coherent_step(StateVector& state, int control, const Region& region, double phi) {
  require_control_zero(state, control, "coherent_step");
  coherent_step_sequence(control, region.product(), phi).apply(state);
}

void coherent_step(StateVector& state, int control, const OperatorSum& H, double phi) {
  require_control_zero(state, control, "coherent_step");
  for (std::size_t a = 0; a < H.terms.size(); ++a) {
    for (std::size_t b = a + 1; b < H.terms.size(); ++b) {
      if (!commutes(H.terms[a].op, H.terms[b].op)) {
        throw std::invalid_argument("coherent_step: terms of the sum do not commute");
      }
    }
  }
  for (const auto& t : H.terms) {
    if (!t.op.is_hermitian()) throw std::invalid_argument("coherent_step: non-Hermitian term");
    // A sign carried by the string folds into the rotation angle.
    const double sign = t.op.phase() == 2 ? -1.0 : 1.0;
    const PauliString P = t.op.with_phase(0);
    if (P.is_identity()) {
      const cplx g = std::polar(1.0, phi * t.coeff * sign);
      for (auto& a : state.amplitudes()) a *= g;
      continue;
    }
    coherent_step_sequence(control, P, phi * t.coeff * sign).apply(state);
  }
}

Gate controlled_rotation(int control, int target, Pauli letter, double theta) {
  if (control == target) throw std::invalid_argument("controlled_rotation: target equals control");
  return gate::PauliRotation{control, PauliString::single(target, letter), theta};
}

void controlled_rotation_UZ(StateVector& state, int control, int target, double theta) {
  GateSequence seq;
  seq.push(controlled_rotation(control, target, Pauli::Z, theta));
  seq.apply(state);
}

Gate constraint_gate(int control, std::span<const int> octahedron) {
  for (std::size_t a = 0; a < octahedron.size(); ++a) {
    if (octahedron[a] == control) throw std::invalid_argument("constraint_gate: control inside the octahedron");
    for (std::size_t b = 0; b < a; ++b) {
      if (octahedron[a] == octahedron[b]) throw std::invalid_argument("constraint_gate: duplicate target");
    }
  }
  if (octahedron.size() != 6) throw std::invalid_argument("constraint_gate: an octahedron has six links");
  return gate::ControlledZPhases{control, std::vector<int>(octahedron.begin(), octahedron.end()), kPi / 6};
}

void apply_constraint_gate(StateVector& state, int control, std::span<const int> octahedron) {
  GateSequence seq;
  seq.push(constraint_gate(control, octahedron));
  seq.apply(state);
}

std::vector<PauliString> ub_strings(std::span<const int> plaquette) {
  std::vector<PauliString> out;
  for (const auto& t : ring_exchange_terms(plaquette).terms) {
    out.push_back(t.coeff > 0 ? t.op : t.op.negated());
  }
  for (const auto& t : rk_terms(plaquette).terms) {
    out.push_back(t.coeff > 0 ? t.op.negated() : t.op);
  }
  return out;
}

GateSequence gate_UB_sequence(int control, std::span<const int> plaquette) {
  if (plaquette.size() != 4) throw std::invalid_argument("gate_UB: a plaquette has four links");
  for (std::size_t a = 0; a < 4; ++a) {
    if (plaquette[a] == control) throw std::invalid_argument("gate_UB: control inside the plaquette");
    for (std::size_t b = 0; b < a; ++b) {
      if (plaquette[a] == plaquette[b]) throw std::invalid_argument("gate_UB: repeated link");
    }
  }
  GateSequence seq;
  const PauliString zc = PauliString::single(control, Pauli::Z);
  for (const auto& C : ub_strings(plaquette)) {
    // G_j exp(i a sigma^z_c) G_j = exp(i a sigma^z_c C_j); with a = -pi/32 and
    // the system rotation exp(i pi/32 C_j) this leaves |0>_c untouched and
    // gives exp(i pi/16 C_j) on |1>_c.
    GateSequence core;
    core.push(gate::ControlledPauli{control, C});
    const GateSequence G = mapping_around(control, core);
    seq.append(G);
    seq.push(gate::PauliRotation{-1, zc, -kPi / 32});
    seq.append(G);
    seq.push(gate::PauliRotation{-1, C, kPi / 32});
  }
  return seq;
}

void gate_UB(StateVector& state, int control, std::span<const int> plaquette) {
  gate_UB_sequence(control, plaquette).apply(state);
}

}  // namespace rydsim
