#pragma once

// Reference matrices built by explicit Kronecker products, independent of the
// bit-twiddling in the library.

#include <complex>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using M = Eigen::MatrixXcd;
using c = std::complex<double>;

inline M pauli(char p) {
  M m(2, 2);
  switch (p) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, c(0, -1), c(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m = M::Identity(2, 2);
  }
  return m;
}

// letters[k] acts on qubit k; qubit 0 is the least significant bit, so it is
// the rightmost Kronecker factor.
inline M string_matrix(const std::string& letters) {
  M out = M::Identity(1, 1);
  for (char p : letters) {
    M next = Eigen::kroneckerProduct(pauli(p), out).eval();
    out = next;
  }
  return out;
}

inline M expm(const M& a) { return a.exp(); }

// Operator on qubit q of n.
inline M embed(const M& u, int q, int n) {
  M out = M::Identity(1, 1);
  for (int k = 0; k < n; ++k) {
    M next = Eigen::kroneckerProduct(k == q ? u : M::Identity(2, 2), out).eval();
    out = next;
  }
  return out;
}

// |v><v| on qubit q of n.
inline M projector(int q, int v, int n) {
  M p = M::Zero(2, 2);
  p(v, v) = 1;
  return embed(p, q, n);
}

inline double op_norm(const M& m) {
  Eigen::JacobiSVD<M> svd(m);
  return svd.singularValues()(0);
}

}  // namespace oracle
