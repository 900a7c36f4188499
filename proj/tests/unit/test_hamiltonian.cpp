#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <map>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "wbench/errors.hpp"
#include "wbench/hamiltonian.hpp"
#include "wbench/pauli.hpp"

using namespace wbench;

namespace {

oracle::Matrix oracle_hamiltonian(const PauliHamiltonian& h) {
  const Eigen::Index dim = Eigen::Index{1} << h.n_qubits;
  oracle::Matrix m = oracle::Matrix::Zero(dim, dim);
  for (const auto& t : h.terms) m += t.coefficient * oracle::pauli_string(t.letters);
  return m;
}

}  // namespace

TEST(Pauli, LabelsRoundTrip) {
  const auto t = PauliTerm::from_label("Y1Z2Y3", 3, -0.5);
  EXPECT_EQ(t.letters, "YZY");
  EXPECT_EQ(t.label(), "Y1Z2Y3");
  EXPECT_EQ(PauliTerm::from_letters("IYY").label(), "Y2Y3");
  EXPECT_EQ(PauliTerm::from_label("X2X3", 4).letters, "IXXI");
  EXPECT_EQ(PauliTerm::from_letters("XIZ").support(), (std::vector<int>{1, 3}));
}

TEST(Pauli, RejectsBadLetters) {
  EXPECT_THROW(PauliTerm::from_letters("XQ"), ConfigError);
  EXPECT_THROW(PauliTerm::from_letters(""), ConfigError);
  EXPECT_THROW(PauliTerm::from_label("X4", 3), ConfigError);
}

TEST(Pauli, HamiltonianValidation) {
  PauliHamiltonian h{3, {PauliTerm::from_letters("XX")}};
  EXPECT_THROW(h.validate(), ConfigError);
  h = PauliHamiltonian{3, {PauliTerm::from_letters("III")}};
  EXPECT_THROW(h.validate(), ConfigError);
}

TEST(Hamiltonian, FermionicTriangleTerms) {
  const auto h = fermionic_triangle();
  ASSERT_EQ(h.n_qubits, 3);
  const std::vector<std::string> labels = {"Y1Z2Y3", "X1Z2X3", "Y1Y2", "X1X2", "Y2Y3", "X2X3"};
  ASSERT_EQ(h.terms.size(), labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    EXPECT_EQ(h.terms[i].label(), labels[i]);
    EXPECT_DOUBLE_EQ(h.terms[i].coefficient, -0.5);
  }
}

TEST(Hamiltonian, DenseMatrixMatchesKroneckerOracle) {
  const auto h = fermionic_triangle();
  EXPECT_LT((dense_matrix(h) - oracle_hamiltonian(h)).norm(), 1e-14);
  const auto ring = hubbard_ring(5);
  EXPECT_LT((dense_matrix(ring) - oracle_hamiltonian(ring)).norm(), 1e-13);
}

TEST(Hamiltonian, WStateIsGroundStateWithEnergyMinusTwo) {
  const auto h = fermionic_triangle();
  EXPECT_NEAR(exact_energy(w_state(), h), -2.0, 1e-12);
  EXPECT_NEAR(exact_energy(run_circuit(w_state_circuit()), h), -2.0, 1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(oracle_hamiltonian(h));
  EXPECT_NEAR(solver.eigenvalues().minCoeff(), -2.0, 1e-10);
}

TEST(Hamiltonian, EveryTermHasExpectationTwoThirds) {
  for (const auto& t : fermionic_triangle().terms) {
    EXPECT_NEAR(exact_expectation(w_state(), t), 2.0 / 3.0, 1e-12) << t.label();
  }
}

TEST(Hamiltonian, RingOfThreeIsTheTriangle) {
  const auto ring = hubbard_ring(3);
  const auto tri = fermionic_triangle();
  ASSERT_EQ(ring.terms.size(), tri.terms.size());
  for (std::size_t i = 0; i < tri.terms.size(); ++i) EXPECT_EQ(ring.terms[i], tri.terms[i]);
}

TEST(Hamiltonian, RingRejectsFewerThanThreeSites) {
  EXPECT_THROW(hubbard_ring(2), ConfigError);
}

TEST(Hamiltonian, RingTermStructure) {
  const auto h = hubbard_ring(4);
  ASSERT_EQ(h.terms.size(), 8u);
  EXPECT_EQ(h.terms[0].letters, "YZZY");
  EXPECT_EQ(h.terms[1].letters, "XZZX");
}

// In the one-particle sector the ring is -t times the cycle adjacency matrix,
// with eigenvalues -2 cos(2 pi k / n).
TEST(Hamiltonian, RingOneParticleSectorIsHoppingOnACycle) {
  for (int n : {3, 4, 5, 6}) {
    const auto m = dense_matrix(hubbard_ring(n));
    Eigen::MatrixXd block(n, n);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        const Eigen::Index ia = Eigen::Index{1} << (n - 1 - a);
        const Eigen::Index ib = Eigen::Index{1} << (n - 1 - b);
        EXPECT_NEAR(m(ia, ib).imag(), 0.0, 1e-14);
        block(a, b) = m(ia, ib).real();
      }
    }
    Eigen::MatrixXd cycle = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < n; ++a) {
      cycle(a, (a + 1) % n) = -1.0;
      cycle((a + 1) % n, a) = -1.0;
    }
    EXPECT_LT((block - cycle).norm(), 1e-13) << n;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block);
    EXPECT_NEAR(solver.eigenvalues().minCoeff(), -2.0, 1e-10) << n;
  }
}

TEST(Hamiltonian, ConservesParticleNumber) {
  const auto m = dense_matrix(hubbard_ring(4));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (std::popcount(static_cast<unsigned>(i)) != std::popcount(static_cast<unsigned>(j))) {
        EXPECT_EQ(std::abs(m(i, j)), 0.0);
      }
    }
  }
}

TEST(Hamiltonian, WAngleSplitsOneThird) {
  EXPECT_NEAR(std::pow(std::cos(w_state_angle() / 2), 2), 1.0 / 3.0, 1e-15);
}

TEST(Hamiltonian, PremeasurementGates) {
  const auto y = premeasurement_circuit(PauliTerm::from_letters("YZY"));
  ASSERT_EQ(y.gates.size(), 4u);
  EXPECT_EQ(y.gates[0], Gate::s_dagger(1));
  EXPECT_EQ(y.gates[1], Gate::hadamard(1));
  EXPECT_EQ(y.measured_qubits, (std::vector<int>{1, 2, 3}));
  const auto x = premeasurement_circuit(PauliTerm::from_letters("IXX"));
  EXPECT_EQ(x.gates, (std::vector<Gate>{Gate::hadamard(2), Gate::hadamard(3)}));
  EXPECT_EQ(x.measured_qubits, (std::vector<int>{2, 3}));
}

// Rotating then measuring Z on the support reproduces <P>.
TEST(Hamiltonian, RotatedParityEqualsExpectation) {
  const auto w = w_state();
  for (const auto& t : hubbard_ring(3).terms) {
    StateVector s = w;
    const auto rot = premeasurement_circuit(t);
    for (const auto& g : rot.gates) s.apply(g);
    const auto dist = exact_probabilities(s, rot.measured_qubits);
    const std::size_t mask = (std::size_t{1} << rot.measured_qubits.size()) - 1;
    EXPECT_NEAR(parity_expectation(dist.probabilities, mask), exact_expectation(w, t), 1e-12);
  }
}

// Exact column of the outcome table: 5/12 and 1/12 for pairs, 1/3, 1/12 and 0
// for the three-qubit strings.
TEST(Hamiltonian, RotatedProbabilitiesMatchTableExactColumn) {
  const auto w = run_circuit(w_state_circuit());
  auto rotated = [&](const char* letters) {
    const auto rot = premeasurement_circuit(PauliTerm::from_letters(letters));
    StateVector s = w;
    for (const auto& g : rot.gates) s.apply(g);
    return exact_probabilities(s, rot.measured_qubits);
  };
  for (const char* pair : {"YYI", "XXI", "IYY", "IXX"}) {
    const auto d = rotated(pair);
    EXPECT_NEAR(d.probability("00"), 5.0 / 12, 1e-12);
    EXPECT_NEAR(d.probability("01"), 1.0 / 12, 1e-12);
    EXPECT_NEAR(d.probability("10"), 1.0 / 12, 1e-12);
    EXPECT_NEAR(d.probability("11"), 5.0 / 12, 1e-12);
  }
  const std::map<std::string, double> triple = {{"000", 1.0 / 3}, {"001", 0.0},
                                                {"010", 1.0 / 12}, {"011", 1.0 / 12},
                                                {"100", 0.0},      {"101", 1.0 / 3},
                                                {"110", 1.0 / 12}, {"111", 1.0 / 12}};
  for (const char* letters : {"YZY", "XZX"}) {
    const auto d = rotated(letters);
    for (const auto& [bits, p] : triple) EXPECT_NEAR(d.probability(bits), p, 1e-12) << bits;
  }
}
