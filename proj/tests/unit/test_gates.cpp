#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "oracle.hpp"
#include "rydsim/channels.hpp"
#include "rydsim/gates.hpp"

using namespace rydsim;

namespace {

// Block <out_c| M |in_c> of a 5-qubit operator whose qubit 4 is the control.
oracle::M control_block(const oracle::M& m, int out, int in) { return m.block(16 * out, 16 * in, 16, 16); }

// Removes the global phase of b relative to a and returns ||a - b||.
double phase_free_distance(const oracle::M& a, const oracle::M& b) {
  const oracle::c tr = (a.adjoint() * b).trace();
  const oracle::c ph = std::abs(tr) > 0 ? tr / std::abs(tr) : oracle::c(1.0);
  return oracle::op_norm(a - b / ph);
}

const std::vector<int> kSites{0, 1, 2, 3};

}  // namespace

TEST_CASE("gates: control pulse is exp(-i alpha sigma^y / 2)") {
  for (double a : {0.0, 0.3, kPi / 2, 2.0}) {
    const oracle::M ref = oracle::expm(oracle::c(0, -a / 2) * oracle::pauli('Y'));
    CHECK((oracle::M(control_pulse(a)) - ref).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("gates: coherent step realises exp(i phi A) on control |0>") {
  std::mt19937_64 g(1);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (Pauli w : {Pauli::X, Pauli::Z, Pauli::Y}) {
    const Region r = Region::uniform(kSites, w);
    const std::string letters(4, pauli_char(w));
    for (int k = 0; k < 5; ++k) {
      const double phi = u(g);
      const oracle::M m = sequence_matrix(coherent_step_sequence(4, r.product(), phi), 5);
      const oracle::M target = oracle::expm(oracle::c(0, phi) * oracle::string_matrix(letters));
      CHECK(phase_free_distance(target, control_block(m, 0, 0)) < 1e-10);
      CHECK(oracle::op_norm(control_block(m, 1, 0)) < 1e-12);
    }
  }
}

TEST_CASE("gates: mapping G sends A to sigma^z of the control") {
  // G (1 (x) sigma^z_c) G^dag restricted to control |0> equals A, so
  // G^dag exp(i phi sigma^z_c) G = exp(i phi A) there.
  const Region r = Region::uniform(kSites, Pauli::X);
  const oracle::M G = sequence_matrix(mapping_G(4, r), 5);
  CHECK((G * G.adjoint() - oracle::M::Identity(32, 32)).cwiseAbs().maxCoeff() < 1e-12);
  const oracle::M zc = oracle::embed(oracle::pauli('Z'), 4, 5);
  const oracle::M mapped = G.adjoint() * zc * G;
  CHECK((control_block(mapped, 0, 0) - oracle::string_matrix("XXXX")).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("gates: inverse and unitarity") {
  const GateSequence seq = coherent_step_sequence(4, PauliString::uniform(kSites, Pauli::X), 0.9);
  CHECK(seq.is_unitary());
  const oracle::M m = sequence_matrix(seq, 5) * sequence_matrix(seq.inverse(), 5);
  CHECK((m - oracle::M::Identity(32, 32)).cwiseAbs().maxCoeff() < 1e-12);
  GateSequence meas;
  meas.push(gate::MeasureReset{4});
  CHECK(!meas.is_unitary());
  CHECK_THROWS(meas.inverse());
}

TEST_CASE("gates: imperfect many-body gate carries exp(i phi Q) on control |0>") {
  OperatorSum Q;
  Q.add(0.1, PauliString::single(0, Pauli::Z));
  const Gate g = many_body_gate(4, PauliString::uniform(kSites, Pauli::X), Q, 0.5);
  GateSequence s;
  s.push(g);
  const oracle::M m = sequence_matrix(s, 5);
  CHECK((control_block(m, 0, 0) - oracle::expm(oracle::c(0, 0.05) * oracle::string_matrix("ZIII"))).cwiseAbs().maxCoeff() <
        1e-12);
  CHECK((control_block(m, 1, 1) - oracle::string_matrix("XXXX")).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("gates: constraint gate and U_B") {
  const std::vector<int> oct{0, 1, 2, 3, 4, 5};
  GateSequence s;
  s.push(constraint_gate(6, oct));
  const oracle::M m = sequence_matrix(s, 7);
  oracle::M sum = oracle::M::Zero(64, 64);
  for (int k = 0; k < 6; ++k) sum += oracle::embed(oracle::pauli('Z'), k, 6);
  const oracle::M P = oracle::expm(oracle::c(0, kPi / 6) * sum);
  CHECK((m.block(64, 64, 64, 64) - P).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((m.block(0, 0, 64, 64) - oracle::M::Identity(64, 64)).cwiseAbs().maxCoeff() < 1e-12);

  CHECK(ub_strings(kSites).size() == 16);
  CHECK(gate_UB_sequence(4, kSites).is_unitary());
}

TEST_CASE("gates: coherent step rejects an excited control") {
  StateVector s(5, 0b10000);
  CHECK_THROWS_AS(coherent_step(s, 4, Region::uniform(kSites, Pauli::X), 0.2), std::invalid_argument);
}

TEST_CASE("gates: coherent step text matches the golden file") {
  const GateSequence seq = coherent_step_sequence(4, PauliString::uniform(kSites, Pauli::X), 0.25);
  std::ifstream in(RYDSIM_GOLDEN_DIR "/coherent_step.txt");
  REQUIRE(in.good());
  std::stringstream golden;
  golden << in.rdbuf();
  CHECK(seq.to_text() == golden.str());
}
