#include "rydsim/statevec.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace rydsim {

namespace {

using u64 = std::uint64_t;

const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

inline double sign_of(u64 x) { return 1.0 - 2.0 * static_cast<double>(std::popcount(x) & 1); }

// Inserts a zero bit at position b of k.
inline u64 insert_zero(u64 k, int b) {
  const u64 low = k & ((u64{1} << b) - 1);
  return ((k >> b) << (b + 1)) | low;
}

// Inserts zero bits at positions a and b (b < 0 means only a).
inline u64 insert_two(u64 k, int a, int b) {
  if (b < 0) return insert_zero(k, a);
  return a < b ? insert_zero(insert_zero(k, a), b) : insert_zero(insert_zero(k, b), a);
}

// Prefactor of the string in the X^x Z^z form.
cplx string_prefactor(const PauliString& op) { return op.phase_factor() * kIPow[op.y_count() % 4]; }

constexpr char kMagic[8] = {'R', 'Y', 'D', 'S', 'V', '0', '0', '1'};

}  // namespace

StateVector::StateVector(int n, std::uint64_t basis_state) : n_(n) {
  if (n < 0 || n > kStateCap) {
    throw std::invalid_argument("StateVector: qubit count " + std::to_string(n) + " outside [0, " +
                                std::to_string(kStateCap) + "]");
  }
  amp_.assign(std::size_t{1} << n, cplx{0, 0});
  if (basis_state >= amp_.size()) throw std::invalid_argument("StateVector: basis state out of range");
  amp_[basis_state] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<cplx> amplitudes) {
  const std::size_t d = amplitudes.size();
  if (d == 0 || (d & (d - 1)) != 0) throw std::invalid_argument("StateVector: size must be a power of two");
  StateVector s;
  s.n_ = std::countr_zero(d);
  if (s.n_ > kStateCap) throw std::invalid_argument("StateVector: too many qubits");
  s.amp_ = std::move(amplitudes);
  return s;
}

void StateVector::check_qubit(int q, const char* what) const {
  if (q < 0 || q >= n_) {
    throw std::out_of_range(std::string(what) + ": qubit " + std::to_string(q) + " out of range for " +
                            std::to_string(n_) + " qubits");
  }
}

double StateVector::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amp_) s += std::norm(a);
  return s;
}

void StateVector::normalize() {
  const double n2 = norm_squared();
  if (!(n2 > 0.0)) throw std::runtime_error("StateVector::normalize: zero norm");
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& a : amp_) a *= inv;
}

void StateVector::apply_single_qubit(int q, const Eigen::Matrix2cd& U) {
  check_qubit(q, "apply_single_qubit");
  if (((U.adjoint() * U) - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("apply_single_qubit: matrix is not unitary");
  }
  const u64 bit = u64{1} << q;
  const u64 d = amp_.size();
  const cplx u00 = U(0, 0), u01 = U(0, 1), u10 = U(1, 0), u11 = U(1, 1);
  for (u64 base = 0; base < d; base += 2 * bit) {
    for (u64 i = base; i < base + bit; ++i) {
      const cplx a0 = amp_[i];
      const cplx a1 = amp_[i | bit];
      amp_[i] = u00 * a0 + u01 * a1;
      amp_[i | bit] = u10 * a0 + u11 * a1;
    }
  }
}

void StateVector::apply_pauli_string(const PauliString& op) { apply_controlled(-1, op, 1); }

void StateVector::apply_controlled(int control, const PauliString& op, int control_value) {
  if (op.max_site() >= n_) throw std::out_of_range("apply_controlled: operator acts beyond the register");
  int cbit = -1;
  u64 cval = 0;
  if (control >= 0) {
    check_qubit(control, "apply_controlled");
    if (op.at(control) != Pauli::I) throw std::invalid_argument("apply_controlled: control inside the target set");
    cbit = control;
    cval = control_value ? u64{1} << control : 0;
  }
  const u64 xm = op.x_mask();
  const u64 zm = op.z_mask();
  const cplx pre = string_prefactor(op);
  cplx* a = amp_.data();
  if (xm == 0) {
    const u64 count = amp_.size() >> (cbit >= 0 ? 1 : 0);
    for (u64 k = 0; k < count; ++k) {
      const u64 i = (cbit >= 0 ? insert_zero(k, cbit) : k) | cval;
      a[i] *= pre * sign_of(i & zm);
    }
    return;
  }
  // Pairs (i, i ^ xm) enumerated once through the highest flipped bit.
  const int pivot = 63 - std::countl_zero(xm);
  const u64 count = amp_.size() >> (cbit >= 0 ? 2 : 1);
  for (u64 k = 0; k < count; ++k) {
    const u64 i = insert_two(k, pivot, cbit) | cval;
    const u64 j = i ^ xm;
    const cplx ai = a[i];
    const cplx aj = a[j];
    a[j] = pre * sign_of(i & zm) * ai;
    a[i] = pre * sign_of(j & zm) * aj;
  }
}

void StateVector::apply_local(std::span<const int> targets, const Eigen::MatrixXcd& U, int control,
                              int control_value) {
  const int k = static_cast<int>(targets.size());
  const Eigen::Index m = Eigen::Index{1} << k;
  if (U.rows() != m || U.cols() != m) throw std::invalid_argument("apply_local: matrix size does not match targets");
  u64 tmask = 0;
  std::vector<u64> bits(k);
  for (int t = 0; t < k; ++t) {
    check_qubit(targets[t], "apply_local");
    bits[t] = u64{1} << targets[t];
    if (tmask & bits[t]) throw std::invalid_argument("apply_local: repeated target");
    tmask |= bits[t];
  }
  u64 cmask = 0, cval = 0;
  if (control >= 0) {
    check_qubit(control, "apply_local");
    cmask = u64{1} << control;
    if (tmask & cmask) throw std::invalid_argument("apply_local: control inside the target set");
    cval = control_value ? cmask : 0;
  }
  // Offsets of the 2^k local basis states.
  std::vector<u64> offset(m, 0);
  for (Eigen::Index b = 0; b < m; ++b) {
    for (int t = 0; t < k; ++t) {
      if ((b >> t) & 1) offset[b] |= bits[t];
    }
  }
  Eigen::VectorXcd in(m), out(m);
  const u64 d = amp_.size();
  for (u64 i = 0; i < d; ++i) {
    if ((i & tmask) != 0 || (i & cmask) != cval) continue;
    for (Eigen::Index b = 0; b < m; ++b) in[b] = amp_[i | offset[b]];
    out.noalias() = U * in;
    for (Eigen::Index b = 0; b < m; ++b) amp_[i | offset[b]] = out[b];
  }
}

void StateVector::apply_pauli_rotation(const PauliString& P, double angle, int control) {
  if (!P.is_hermitian()) throw std::invalid_argument("apply_pauli_rotation: generator must be Hermitian");
  if (P.max_site() >= n_) throw std::out_of_range("apply_pauli_rotation: operator acts beyond the register");
  int cbit = -1;
  u64 cval = 0;
  if (control >= 0) {
    check_qubit(control, "apply_pauli_rotation");
    if (P.at(control) != Pauli::I) throw std::invalid_argument("apply_pauli_rotation: control inside the target set");
    cbit = control;
    cval = u64{1} << control;
  }
  const u64 xm = P.x_mask();
  const u64 zm = P.z_mask();
  const cplx isn = cplx{0, std::sin(angle)} * string_prefactor(P);
  const double c = std::cos(angle);
  cplx* a = amp_.data();
  if (xm == 0) {
    const cplx plus = c + isn;
    const cplx minus = c - isn;
    const u64 count = amp_.size() >> (cbit >= 0 ? 1 : 0);
    for (u64 k = 0; k < count; ++k) {
      const u64 i = (cbit >= 0 ? insert_zero(k, cbit) : k) | cval;
      a[i] *= (std::popcount(i & zm) & 1) ? minus : plus;
    }
    return;
  }
  const int pivot = 63 - std::countl_zero(xm);
  const u64 count = amp_.size() >> (cbit >= 0 ? 2 : 1);
  for (u64 k = 0; k < count; ++k) {
    const u64 i = insert_two(k, pivot, cbit) | cval;
    const u64 j = i ^ xm;
    const cplx ai = a[i];
    const cplx aj = a[j];
    a[i] = c * ai + isn * sign_of(j & zm) * aj;
    a[j] = c * aj + isn * sign_of(i & zm) * ai;
  }
}

BlockOp BlockOp::control_unitary(const Eigen::Matrix2cd& U) {
  if (((U.adjoint() * U) - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("BlockOp: matrix is not unitary");
  }
  BlockOp b;
  b.kind = Kind::ControlUnitary;
  b.U = U;
  return b;
}

BlockOp BlockOp::control_phase(double angle) {
  BlockOp b;
  b.kind = Kind::ControlPhase;
  b.angle = angle;
  return b;
}

BlockOp BlockOp::controlled_string(const PauliString& op) {
  BlockOp b;
  b.kind = Kind::ControlledString;
  b.x_mask = op.x_mask();
  b.z_mask = op.z_mask();
  b.pre = string_prefactor(op);
  return b;
}

BlockOp BlockOp::controlled_rotation(const PauliString& P, double angle) {
  if (!P.is_hermitian()) throw std::invalid_argument("BlockOp: rotation generator must be Hermitian");
  BlockOp b;
  b.kind = Kind::ControlledRotation;
  b.x_mask = P.x_mask();
  b.z_mask = P.z_mask();
  b.pre = string_prefactor(P);
  b.angle = angle;
  return b;
}

BlockOp BlockOp::controlled_z_phases(std::span<const int> sites, double angle) {
  BlockOp b;
  b.kind = Kind::ControlledZPhases;
  for (int s : sites) {
    if (b.z_mask & (u64{1} << s)) throw std::invalid_argument("BlockOp: repeated target");
    b.z_mask |= u64{1} << s;
  }
  const int k = static_cast<int>(sites.size());
  // popcount m of the down spins: k - 2m net sigma^z.
  for (int m = 0; m <= k; ++m) b.table.push_back(std::polar(1.0, angle * (k - 2 * m)));
  return b;
}

void StateVector::apply_block_program(int control, u64 flip_mask, std::span<const BlockOp> ops) {
  check_qubit(control, "apply_block_program");
  const u64 cm = u64{1} << control;
  if (flip_mask & cm) throw std::invalid_argument("apply_block_program: flip mask contains the control");
  if (flip_mask >> n_) throw std::out_of_range("apply_block_program: flip mask beyond the register");
  for (const auto& op : ops) {
    if ((op.x_mask | op.z_mask) & cm) throw std::invalid_argument("apply_block_program: string touches the control");
    if ((op.x_mask | op.z_mask) >> n_) throw std::out_of_range("apply_block_program: string beyond the register");
    if (op.x_mask != 0 && op.x_mask != flip_mask) {
      throw std::invalid_argument("apply_block_program: string flips outside the block");
    }
  }
  struct Prepared {
    BlockOp::Kind kind;
    bool flips;
    u64 z;
    cplx u00, u01, u10, u11;  // ControlUnitary, or (phase0, phase1) / (pre, isn) pairs
    double c;
    const cplx* table;
  };
  std::vector<Prepared> prog;
  prog.reserve(ops.size());
  for (const auto& op : ops) {
    Prepared p{op.kind, op.x_mask != 0, op.z_mask, 0, 0, 0, 0, 0.0, op.table.data()};
    switch (op.kind) {
      case BlockOp::Kind::ControlUnitary:
        p.u00 = op.U(0, 0);
        p.u01 = op.U(0, 1);
        p.u10 = op.U(1, 0);
        p.u11 = op.U(1, 1);
        break;
      case BlockOp::Kind::ControlPhase:
        p.u00 = std::polar(1.0, op.angle);
        p.u11 = std::polar(1.0, -op.angle);
        break;
      case BlockOp::Kind::ControlledString:
        p.u00 = op.pre;
        break;
      case BlockOp::Kind::ControlledRotation:
        p.c = std::cos(op.angle);
        p.u01 = cplx{0, std::sin(op.angle)} * op.pre;
        break;
      case BlockOp::Kind::ControlledZPhases:
        break;
    }
    prog.push_back(p);
  }

  const bool pairs = flip_mask != 0;
  const int nf = pairs ? 2 : 1;
  const int pivot = pairs ? 63 - std::countl_zero(flip_mask) : -1;
  const u64 count = amp_.size() >> (pairs ? 2 : 1);

  auto run = [&](const u64 (&idx)[2][2], cplx (&v)[2][2]) {
    for (const auto& p : prog) {
      switch (p.kind) {
        case BlockOp::Kind::ControlUnitary:
          for (int f = 0; f < nf; ++f) {
            const cplx x0 = v[0][f];
            const cplx x1 = v[1][f];
            v[0][f] = p.u00 * x0 + p.u01 * x1;
            v[1][f] = p.u10 * x0 + p.u11 * x1;
          }
          break;
        case BlockOp::Kind::ControlPhase:
          for (int f = 0; f < nf; ++f) {
            v[0][f] *= p.u00;
            v[1][f] *= p.u11;
          }
          break;
        case BlockOp::Kind::ControlledString:
          if (p.flips) {
            const cplx x0 = v[1][0];
            v[1][0] = p.u00 * sign_of(idx[1][1] & p.z) * v[1][1];
            v[1][1] = p.u00 * sign_of(idx[1][0] & p.z) * x0;
          } else {
            for (int f = 0; f < nf; ++f) v[1][f] *= p.u00 * sign_of(idx[1][f] & p.z);
          }
          break;
        case BlockOp::Kind::ControlledRotation:
          if (p.flips) {
            const cplx x0 = v[1][0];
            const cplx x1 = v[1][1];
            v[1][0] = p.c * x0 + p.u01 * sign_of(idx[1][1] & p.z) * x1;
            v[1][1] = p.c * x1 + p.u01 * sign_of(idx[1][0] & p.z) * x0;
          } else {
            for (int f = 0; f < nf; ++f) v[1][f] *= p.c + p.u01 * sign_of(idx[1][f] & p.z);
          }
          break;
        case BlockOp::Kind::ControlledZPhases:
          for (int f = 0; f < nf; ++f) v[1][f] *= p.table[std::popcount(idx[1][f] & p.z)];
          break;
      }
    }
  };
  auto block_indices = [&](u64 k, u64 (&idx)[2][2]) {
    const u64 b = pairs ? insert_two(k, pivot, control) : insert_zero(k, control);
    idx[0][0] = b;
    idx[0][1] = b ^ flip_mask;
    idx[1][0] = b | cm;
    idx[1][1] = (b | cm) ^ flip_mask;
  };

  // The block action depends on the block only through the parities of its
  // base index under each string's Z mask and the popcounts under each phase
  // mask, so one small matrix per class replaces the op-by-op loop.
  std::vector<u64> parity_masks;
  std::vector<u64> count_masks;
  for (const auto& p : prog) {
    if (p.kind == BlockOp::Kind::ControlledZPhases) {
      count_masks.push_back(p.z);
    } else if ((p.kind == BlockOp::Kind::ControlledString || p.kind == BlockOp::Kind::ControlledRotation) && p.z &&
               std::find(parity_masks.begin(), parity_masks.end(), p.z) == parity_masks.end()) {
      parity_masks.push_back(p.z);
    }
  }
  int key_bits = static_cast<int>(parity_masks.size());
  std::vector<int> count_bits;
  for (u64 m : count_masks) {
    count_bits.push_back(std::bit_width(static_cast<unsigned>(std::popcount(m))));
    key_bits += 2 * count_bits.back();
  }
  cplx* a = amp_.data();
  if (key_bits > 12) {
    for (u64 k = 0; k < count; ++k) {
      u64 idx[2][2];
      block_indices(k, idx);
      cplx v[2][2];
      for (int c = 0; c < 2; ++c) {
        for (int f = 0; f < nf; ++f) v[c][f] = a[idx[c][f]];
      }
      run(idx, v);
      for (int c = 0; c < 2; ++c) {
        for (int f = 0; f < nf; ++f) a[idx[c][f]] = v[c][f];
      }
    }
    return;
  }

  auto key_of = [&](u64 b0, u64 b1) {
    u64 key = 0;
    int shift = 0;
    for (u64 m : parity_masks) key |= static_cast<u64>(std::popcount(b0 & m) & 1) << shift++;
    for (std::size_t j = 0; j < count_masks.size(); ++j) {
      key |= static_cast<u64>(std::popcount(b0 & count_masks[j])) << shift;
      shift += count_bits[j];
      key |= static_cast<u64>(std::popcount(b1 & count_masks[j])) << shift;
      shift += count_bits[j];
    }
    return key;
  };
  std::vector<int> slot(std::size_t{1} << key_bits, -1);
  std::vector<std::array<cplx, 16>> mats;
  auto matrix_for = [&](const u64 (&idx)[2][2]) -> const std::array<cplx, 16>& {
    const u64 key = key_of(idx[0][0], idx[0][1]);
    if (slot[key] < 0) {
      // Local index e = c + 2 f, row-major D x D.
      const int D = 2 * nf;
      std::array<cplx, 16> m{};
      for (int e = 0; e < D; ++e) {
        cplx v[2][2] = {};
        v[e & 1][e >> 1] = 1.0;
        run(idx, v);
        for (int r = 0; r < D; ++r) m[r * D + e] = v[r & 1][r >> 1];
      }
      slot[key] = static_cast<int>(mats.size());
      mats.push_back(m);
    }
    return mats[slot[key]];
  };

  if (key_bits == 0) {
    u64 idx[2][2];
    block_indices(0, idx);
    const auto m = matrix_for(idx);
    if (pairs) {
      for (u64 k = 0; k < count; ++k) {
        const u64 b = insert_two(k, pivot, control);
        const u64 i0 = b, i1 = b | cm, i2 = b ^ flip_mask, i3 = i1 ^ flip_mask;
        const cplx x0 = a[i0], x1 = a[i1], x2 = a[i2], x3 = a[i3];
        a[i0] = m[0] * x0 + m[1] * x1 + m[2] * x2 + m[3] * x3;
        a[i1] = m[4] * x0 + m[5] * x1 + m[6] * x2 + m[7] * x3;
        a[i2] = m[8] * x0 + m[9] * x1 + m[10] * x2 + m[11] * x3;
        a[i3] = m[12] * x0 + m[13] * x1 + m[14] * x2 + m[15] * x3;
      }
    } else {
      for (u64 k = 0; k < count; ++k) {
        const u64 i0 = insert_zero(k, control), i1 = i0 | cm;
        const cplx x0 = a[i0], x1 = a[i1];
        a[i0] = m[0] * x0 + m[1] * x1;
        a[i1] = m[2] * x0 + m[3] * x1;
      }
    }
    return;
  }

  for (u64 k = 0; k < count; ++k) {
    u64 idx[2][2];
    block_indices(k, idx);
    const auto& m = matrix_for(idx);
    if (pairs) {
      const cplx x0 = a[idx[0][0]], x1 = a[idx[1][0]], x2 = a[idx[0][1]], x3 = a[idx[1][1]];
      a[idx[0][0]] = m[0] * x0 + m[1] * x1 + m[2] * x2 + m[3] * x3;
      a[idx[1][0]] = m[4] * x0 + m[5] * x1 + m[6] * x2 + m[7] * x3;
      a[idx[0][1]] = m[8] * x0 + m[9] * x1 + m[10] * x2 + m[11] * x3;
      a[idx[1][1]] = m[12] * x0 + m[13] * x1 + m[14] * x2 + m[15] * x3;
    } else {
      const cplx x0 = a[idx[0][0]], x1 = a[idx[1][0]];
      a[idx[0][0]] = m[0] * x0 + m[1] * x1;
      a[idx[1][0]] = m[2] * x0 + m[3] * x1;
    }
  }
}

void StateVector::apply_controlled_z_phases(int control, std::span<const int> sites, double angle) {
  check_qubit(control, "apply_controlled_z_phases");
  const u64 cmask = u64{1} << control;
  u64 smask = 0;
  for (int s : sites) {
    check_qubit(s, "apply_controlled_z_phases");
    const u64 b = u64{1} << s;
    if (b == cmask) throw std::invalid_argument("apply_controlled_z_phases: control inside the target set");
    if (smask & b) throw std::invalid_argument("apply_controlled_z_phases: repeated target");
    smask |= b;
  }
  const int k = static_cast<int>(sites.size());
  // Phase exp(i angle (k - 2 * #down)) indexed by the number of down spins.
  std::vector<cplx> table(k + 1);
  for (int down = 0; down <= k; ++down) table[down] = std::polar(1.0, angle * (k - 2 * down));
  const u64 half = amp_.size() >> 1;
  for (u64 k = 0; k < half; ++k) {
    const u64 i = insert_zero(k, control) | cmask;
    amp_[i] *= table[std::popcount(i & smask)];
  }
}

double StateVector::probability_one(int q) const {
  check_qubit(q, "probability_one");
  const u64 bit = u64{1} << q;
  const u64 half = amp_.size() >> 1;
  double p = 0.0;
  for (u64 k = 0; k < half; ++k) p += std::norm(amp_[insert_zero(k, q) | bit]);
  return p;
}

double StateVector::project(int q, int value) {
  check_qubit(q, "project");
  const u64 bit = u64{1} << q;
  const u64 keep = value ? bit : 0;
  const u64 half = amp_.size() >> 1;
  double p = 0.0;
  for (u64 k = 0; k < half; ++k) p += std::norm(amp_[insert_zero(k, q) | keep]);
  if (!(p > 0.0)) throw std::logic_error("project: selected branch has zero probability");
  const double inv = 1.0 / std::sqrt(p);
  for (u64 k = 0; k < half; ++k) {
    const u64 i = insert_zero(k, q);
    amp_[i | keep] *= inv;
    amp_[i | (bit ^ keep)] = 0.0;
  }
  return p;
}

int StateVector::measure(int q, Rng& rng) {
  const double p1 = probability_one(q);
  const int outcome = rng.uniform() < p1 ? 1 : 0;
  project(q, outcome);
  return outcome;
}

int StateVector::measure_and_reset(int q, Rng& rng) {
  const int outcome = measure(q, rng);
  if (outcome == 1) {
    const u64 bit = u64{1} << q;
    const u64 half = amp_.size() >> 1;
    for (u64 k = 0; k < half; ++k) {
      const u64 i = insert_zero(k, q);
      amp_[i] = amp_[i | bit];
      amp_[i | bit] = 0.0;
    }
  }
  return outcome;
}

double StateVector::expectation(const PauliString& P) const {
  if (!P.is_hermitian()) throw std::invalid_argument("expectation: operator must be Hermitian");
  if (P.max_site() >= n_) throw std::out_of_range("expectation: operator acts beyond the register");
  const u64 xm = P.x_mask();
  const u64 zm = P.z_mask();
  const cplx pre = string_prefactor(P);
  cplx acc = 0.0;
  for (u64 i = 0; i < amp_.size(); ++i) acc += std::conj(amp_[i ^ xm]) * amp_[i] * sign_of(i & zm);
  return (pre * acc).real();
}

double StateVector::expectation(const OperatorSum& H) const {
  double e = 0.0;
  for (const auto& t : H.terms) e += t.coeff * expectation(t.op);
  return e;
}

cplx StateVector::inner(const StateVector& other) const {
  if (other.amp_.size() != amp_.size()) throw std::invalid_argument("inner: dimension mismatch");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < amp_.size(); ++i) acc += std::conj(amp_[i]) * other.amp_[i];
  return acc;
}

double fidelity(const StateVector& a, const StateVector& b) {
  const double f = std::norm(a.inner(b)) / (a.norm_squared() * b.norm_squared());
  return std::clamp(f, 0.0, 1.0);
}

void StateVector::write_binary(std::ostream& out) const {
  static_assert(std::endian::native == std::endian::little, "binary dump assumes a little-endian host");
  const std::uint32_t n = static_cast<std::uint32_t>(n_);
  const std::uint64_t count = amp_.size();
  out.write(kMagic, sizeof kMagic);
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(reinterpret_cast<const char*>(&count), sizeof count);
  out.write(reinterpret_cast<const char*>(amp_.data()), static_cast<std::streamsize>(count * sizeof(cplx)));
}

StateVector StateVector::read_binary(std::istream& in) {
  char magic[8];
  std::uint32_t n = 0;
  std::uint64_t count = 0;
  in.read(magic, sizeof magic);
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  in.read(reinterpret_cast<char*>(&count), sizeof count);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0) throw std::runtime_error("read_binary: bad header");
  if (n > kStateCap || count != (std::uint64_t{1} << n)) throw std::runtime_error("read_binary: inconsistent size");
  std::vector<cplx> amp(count);
  in.read(reinterpret_cast<char*>(amp.data()), static_cast<std::streamsize>(count * sizeof(cplx)));
  if (!in) throw std::runtime_error("read_binary: truncated data");
  return from_amplitudes(std::move(amp));
}

DensityMatrix DensityMatrix::from_state(const StateVector& psi) {
  if (psi.qubits() > kOracleCap) throw std::invalid_argument("DensityMatrix: above the oracle cap");
  Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(), static_cast<Eigen::Index>(psi.dim()));
  return {psi.qubits(), v * v.adjoint()};
}

DensityMatrix DensityMatrix::maximally_mixed(int n) {
  if (n > kOracleCap) throw std::invalid_argument("DensityMatrix: above the oracle cap");
  const Eigen::Index d = Eigen::Index{1} << n;
  return {n, Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d)};
}

bool DensityMatrix::is_valid(double tol) const {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  return std::abs(rho.trace() - cplx{1, 0}) <= tol;
}

double DensityMatrix::expectation(const PauliString& P) const {
  return (to_matrix(P, n) * rho).trace().real();
}

}  // namespace rydsim
