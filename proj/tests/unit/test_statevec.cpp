#include <doctest.h>

#include <random>
#include <sstream>

#include "oracle.hpp"
#include "rydsim/gates.hpp"
#include "rydsim/statevec.hpp"

using namespace rydsim;

namespace {

Eigen::VectorXcd to_vec(const StateVector& s) {
  return Eigen::Map<const Eigen::VectorXcd>(s.amplitudes().data(), static_cast<Eigen::Index>(s.dim()));
}

StateVector random_state(int n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> d;
  std::vector<cplx> a(std::size_t{1} << n);
  for (auto& x : a) x = {d(g), d(g)};
  StateVector s = StateVector::from_amplitudes(a);
  s.normalize();
  return s;
}

Eigen::Matrix2cd random_unitary(std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(0, 2 * kPi);
  const double a = u(g), b = u(g), c = u(g), d = u(g);
  Eigen::Matrix2cd m;
  m << std::polar(1.0, a) * std::cos(b), std::polar(1.0, c) * std::sin(b),
      -std::polar(1.0, d - c) * std::sin(b), std::polar(1.0, d - a) * std::cos(b);
  return m;
}

}  // namespace

TEST_CASE("statevec: single-qubit gates match embedded matrices") {
  std::mt19937_64 g(5);
  for (int q = 0; q < 5; ++q) {
    StateVector s = random_state(5, 100 + q);
    const Eigen::VectorXcd before = to_vec(s);
    const Eigen::Matrix2cd U = random_unitary(g);
    s.apply_single_qubit(q, U);
    CHECK((to_vec(s) - oracle::embed(U, q, 5) * before).norm() < 1e-13);
  }
  StateVector s(2);
  Eigen::Matrix2cd bad = Eigen::Matrix2cd::Identity() * 1.1;
  CHECK_THROWS_AS(s.apply_single_qubit(0, bad), std::invalid_argument);
  CHECK_THROWS(s.apply_single_qubit(2, Eigen::Matrix2cd::Identity()));
}

TEST_CASE("statevec: strings, controlled strings and rotations") {
  StateVector s = random_state(5, 7);
  const Eigen::VectorXcd v = to_vec(s);
  const auto P = PauliString::parse("+1 X0 Y2 Z3");
  const oracle::M mP = oracle::string_matrix("XIYZI");

  StateVector a = s;
  a.apply_pauli_string(P);
  CHECK((to_vec(a) - mP * v).norm() < 1e-13);

  StateVector b = s;
  b.apply_controlled(4, P);
  const oracle::M ctrl = oracle::projector(4, 1, 5) * mP + oracle::projector(4, 0, 5);
  CHECK((to_vec(b) - ctrl * v).norm() < 1e-13);

  StateVector c = s;
  c.apply_pauli_rotation(P, 0.41);
  CHECK((to_vec(c) - oracle::expm(oracle::c(0, 0.41) * mP) * v).norm() < 1e-12);

  StateVector d = s;
  d.apply_pauli_rotation(P, -0.8, 4);
  const oracle::M rot = oracle::projector(4, 1, 5) * oracle::expm(oracle::c(0, -0.8) * mP) + oracle::projector(4, 0, 5);
  CHECK((to_vec(d) - rot * v).norm() < 1e-12);

  StateVector e = s;
  const std::vector<int> sites{0, 2};
  e.apply_controlled_z_phases(4, sites, 0.3);
  const oracle::M zz = oracle::expm(oracle::c(0, 0.3) * (oracle::string_matrix("ZIIII") + oracle::string_matrix("IIZII")));
  CHECK((to_vec(e) - (oracle::projector(4, 1, 5) * zz + oracle::projector(4, 0, 5)) * v).norm() < 1e-12);
}

TEST_CASE("statevec: local unitaries follow the target order") {
  StateVector s = random_state(4, 9);
  const Eigen::VectorXcd v = to_vec(s);
  const std::vector<int> targets{3, 1};
  const oracle::M U = oracle::expm(oracle::c(0, 0.7) * oracle::string_matrix("XY"));
  s.apply_local(targets, U);
  // local qubit 0 = site 3 carries X, local qubit 1 = site 1 carries Y.
  CHECK((to_vec(s) - oracle::expm(oracle::c(0, 0.7) * oracle::string_matrix("IYIX")) * v).norm() < 1e-12);
}

TEST_CASE("statevec: expectations, projection and measurement") {
  StateVector s = random_state(4, 21);
  const Eigen::VectorXcd v = to_vec(s);
  const auto P = PauliString::parse("+1 Z0 X3");
  CHECK(s.expectation(P) == doctest::Approx((v.adjoint() * oracle::string_matrix("ZIIX") * v)(0).real()).epsilon(1e-12));
  CHECK_THROWS(s.expectation(PauliString::parse("+i Z0")));

  const double p1 = (oracle::projector(2, 1, 4) * v).squaredNorm();
  CHECK(s.probability_one(2) == doctest::Approx(p1).epsilon(1e-12));
  StateVector t = s;
  CHECK(t.project(2, 1) == doctest::Approx(p1).epsilon(1e-12));
  CHECK(t.norm_squared() == doctest::Approx(1.0));
  CHECK(t.probability_one(2) == doctest::Approx(1.0));

  Rng rng(3);
  int ones = 0;
  for (int k = 0; k < 2000; ++k) {
    StateVector u = s;
    const int m = u.measure_and_reset(2, rng);
    ones += m;
    CHECK(u.probability_one(2) < 1e-12);
    CHECK(u.norm_squared() == doctest::Approx(1.0));
  }
  // Binomial with p1 and 2000 draws: 5 sigma band.
  CHECK(std::abs(ones / 2000.0 - p1) < 5 * std::sqrt(p1 * (1 - p1) / 2000));
}

TEST_CASE("statevec: binary dump round trip") {
  StateVector s = random_state(3, 4);
  std::stringstream io;
  s.write_binary(io);
  const std::string bytes = io.str();
  CHECK(bytes.substr(0, 8) == "RYDSV001");
  CHECK(bytes.size() == 8 + 4 + 8 + 8 * 16);
  const StateVector r = StateVector::read_binary(io);
  CHECK(r.amplitudes() == s.amplitudes());

  std::stringstream bad("RYDSV999");
  CHECK_THROWS(StateVector::read_binary(bad));
}

TEST_CASE("statevec: fused block programs equal the gatewise path") {
  const std::vector<int> sites{0, 2, 3, 5};
  const auto A = PauliString::uniform(sites, Pauli::X);
  OperatorSum Q;
  Q.add(0.1, PauliString::single(0, Pauli::Z));
  for (const GateSequence& seq : {coherent_step_sequence(6, A, 0.37), gate_UB_sequence(6, sites),
                                  coherent_step_sequence(6, PauliString::uniform(sites, Pauli::Z), -1.1)}) {
    StateVector a = random_state(7, 31);
    StateVector b = a;
    seq.apply(a);
    seq.apply_gatewise(b);
    CHECK((to_vec(a) - to_vec(b)).norm() < 1e-12);
  }
}

TEST_CASE("statevec: density matrices") {
  const auto rho = DensityMatrix::from_state(random_state(3, 2));
  CHECK(rho.is_valid());
  CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
  const auto mixed = DensityMatrix::maximally_mixed(2);
  CHECK(mixed.expectation(PauliString::parse("+1 Z0")) == doctest::Approx(0.0));
}
