#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace rydsim {

using cplx = std::complex<double>;

// Largest qubit count for which dense 2^n x 2^n matrices are built.
inline constexpr int kOracleCap = 14;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/// Signed multi-site Pauli operator i^k * prod_site letter(site).
///
/// Letters are kept sorted by site with identities dropped, so two strings
/// compare equal exactly when they represent the same operator.
class PauliString {
 public:
  struct Factor {
    int site;
    Pauli letter;
    bool operator==(const Factor&) const = default;
  };

  PauliString() = default;
  PauliString(std::initializer_list<Factor> factors, int phase = 0);
  PauliString(std::vector<Factor> factors, int phase = 0);

  // The same letter on every listed site.
  static PauliString uniform(std::span<const int> sites, Pauli letter, int phase = 0);
  static PauliString single(int site, Pauli letter) { return PauliString({{site, letter}}); }
  static PauliString identity() { return {}; }

  // Parses the canonical text form, e.g. "+1 X3 X7" or "-i Y0 Z2".
  static PauliString parse(std::string_view text);

  // Exponent k of the prefactor i^k, in [0, 4).
  int phase() const { return phase_; }
  cplx phase_factor() const;
  bool is_hermitian() const { return phase_ % 2 == 0; }
  bool is_identity() const { return factors_.empty(); }

  const std::vector<Factor>& factors() const { return factors_; }
  Pauli at(int site) const;
  std::vector<int> support() const;
  std::size_t weight() const { return factors_.size(); }
  int max_site() const { return factors_.empty() ? -1 : factors_.back().site; }

  PauliString with_phase(int phase) const;
  PauliString negated() const { return with_phase(phase_ + 2); }
  PauliString adjoint() const { return with_phase(4 - phase_); }

  PauliString operator*(const PauliString& rhs) const;
  bool operator==(const PauliString&) const = default;

  std::string to_string() const;

  // Bit masks over sites < 64 for the state-vector kernels: the string acts as
  // phase * i^{#Y} * X^{x_mask} Z^{z_mask} with Y = iXZ on each site.
  std::uint64_t x_mask() const;
  std::uint64_t z_mask() const;
  int y_count() const;

 private:
  void normalize();

  std::vector<Factor> factors_;
  int phase_ = 0;
};

PauliString multiply(const PauliString& a, const PauliString& b);
bool commutes(const PauliString& a, const PauliString& b);

/// Real linear combination of Pauli strings.
struct OperatorSum {
  struct Term {
    double coeff;
    PauliString op;
  };

  std::vector<Term> terms;

  OperatorSum() = default;
  OperatorSum(std::initializer_list<Term> t) : terms(t) {}

  void add(double coeff, PauliString op) { terms.push_back({coeff, std::move(op)}); }
  bool is_hermitian() const;
  // Largest absolute coefficient.
  double magnitude() const;
  std::vector<int> support() const;
  // Merges duplicate strings (including their phases) and drops zero terms.
  OperatorSum simplified(double tol = 1e-15) const;
  OperatorSum scaled(double factor) const;

  OperatorSum& operator+=(const OperatorSum& rhs);
};

OperatorSum operator+(OperatorSum a, const OperatorSum& b);

// Text form "coeff*PAULISTRING;coeff*PAULISTRING", e.g. "0.1*+1 Z0;0.05*+1 X1".
OperatorSum parse_operator_sum(std::string_view text);
std::string to_string(const OperatorSum& op);
OperatorSum operator*(const OperatorSum& a, const OperatorSum& b);

// Dense matrices in the convention that site 0 is the least significant bit of
// the basis label. Throws std::invalid_argument above `cap` qubits.
Eigen::MatrixXcd to_matrix(const PauliString& op, int n, int cap = kOracleCap);
Eigen::MatrixXcd to_matrix(const OperatorSum& op, int n, int cap = kOracleCap);

// The same operators restricted to an ordered list of sites; local qubit k of
// the result is sites[k].
Eigen::MatrixXcd to_local_matrix(const PauliString& op, std::span<const int> sites);
Eigen::MatrixXcd to_local_matrix(const OperatorSum& op, std::span<const int> sites);

}  // namespace rydsim
