#include "oracles.hpp"

#include "qpe/error.hpp"
#include "qpe/quantum_sim.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace qpe {
namespace {

using testing::dense_ising;
using testing::dense_mixer;
using testing::dense_xy;
using testing::expm_minus_i;

double max_abs(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) { return (a - b).cwiseAbs().maxCoeff(); }

QuantumState bell() {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v[0] = v[3] = 1 / std::sqrt(2.0);
  return QuantumState::from_amplitudes(v);
}

TEST(QuantumState, ConstructionAndCaps) {
  const QuantumState s(3);
  EXPECT_EQ(s.dimension(), 8u);
  EXPECT_EQ(s.amplitudes()[0], cplx(1, 0));
  EXPECT_THROW(QuantumState(5, 4), CapacityError);
  EXPECT_THROW(QuantumState::from_amplitudes(Eigen::VectorXcd::Ones(3)), DataError);
  EXPECT_THROW(QuantumState::from_amplitudes(Eigen::VectorXcd::Ones(4)), DataError);
  EXPECT_EQ(QuantumState::basis(2, 3).amplitudes()[3], cplx(1, 0));
}

TEST(BuildGraphState, ZeroAnglesReturnInput) {
  Rng rng(1);
  const Graph g = testing::random_graph(4, 0.5, rng);
  const QuantumState psi0 = QuantumState::basis(4, 5);
  EvolutionParams p;
  p.schedule = {0, 0, 0, 0, 0};
  EXPECT_EQ(build_graph_state(g, p, psi0).amplitudes(), psi0.amplitudes());
}

TEST(BuildGraphState, EmptyGraphOnlyChangesGlobalPhase) {
  const Graph g(3, {});
  EvolutionParams p;
  p.schedule = {0, 1.7, 0};
  const QuantumState psi0 = QuantumState::basis(3, 2);
  const auto out = build_graph_state(g, p, psi0).amplitudes();
  EXPECT_NEAR(std::abs(out[2]), 1.0, 1e-15);
}

TEST(BuildGraphState, K2MatchesDenseExponentials) {
  const Graph g = Graph::from_pairs(2, {{0, 1}});
  EvolutionParams p;
  p.schedule = {std::numbers::pi / 4, 1.0, -std::numbers::pi / 4};
  const QuantumState psi0(2);
  const Eigen::VectorXcd ref = expm_minus_i(dense_mixer(2, 'Y'), -std::numbers::pi / 4) *
                               expm_minus_i(dense_ising(g, 0.0), 1.0) *
                               expm_minus_i(dense_mixer(2, 'Y'), std::numbers::pi / 4) * psi0.amplitudes();
  EXPECT_LE(max_abs(build_graph_state(g, p, psi0).amplitudes(), ref), 1e-12);
}

TEST(BuildGraphState, MultiLayerIsingAndXyMatchDenseOracle) {
  Rng rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    const Graph g = testing::random_graph(5, 0.5, rng, true);
    for (auto ham : {GraphHamiltonian::ising, GraphHamiltonian::xy}) {
      for (auto mixer : {Mixer::sum_y, Mixer::sum_x}) {
        EvolutionParams p;
        p.hamiltonian = ham;
        p.mixer = mixer;
        p.delta = rng.uniform(-1, 1);
        for (int k = 0; k < 5; ++k) p.schedule.push_back(rng.uniform(-2, 2));
        const Eigen::MatrixXcd hg = ham == GraphHamiltonian::ising ? dense_ising(g, p.delta) : dense_xy(g);
        const Eigen::MatrixXcd hm = dense_mixer(5, mixer == Mixer::sum_y ? 'Y' : 'X');
        Eigen::VectorXcd ref = QuantumState(5).amplitudes();
        ref = expm_minus_i(hm, p.schedule[0]) * ref;
        for (std::size_t k = 1; k < p.schedule.size(); k += 2) {
          ref = expm_minus_i(hg, p.schedule[k]) * ref;
          ref = expm_minus_i(hm, p.schedule[k + 1]) * ref;
        }
        EXPECT_LE(max_abs(build_graph_state(g, p, QuantumState(5)).amplitudes(), ref), 1e-11);
      }
    }
  }
}

TEST(BuildGraphState, ValidatesSchedule) {
  const Graph g = Graph::from_pairs(2, {{0, 1}});
  EvolutionParams p;
  p.schedule = {0.1, 0.2};
  EXPECT_THROW(build_graph_state(g, p, QuantumState(2)), DataError);
  p.schedule = {0.1, 0.2, 0.3};
  EXPECT_THROW(build_graph_state(g, p, QuantumState(3)), DataError);
}

TEST(XyHamiltonian, MatchesDenseKronecker) {
  Rng rng(4);
  const Graph g = testing::random_graph(5, 0.6, rng, true);
  Eigen::VectorXcd x = Eigen::VectorXcd::Random(32);
  EXPECT_LE(max_abs(apply_xy_hamiltonian(x, g), dense_xy(g) * x), 1e-13);
  const Eigen::VectorXd diag = ising_diagonal(g, 0.3);
  EXPECT_LE((diag.cast<cplx>() - dense_ising(g, 0.3).diagonal()).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(PauliExpectation, BasisAndBell) {
  const QuantumState zero(2);
  EXPECT_DOUBLE_EQ(pauli_expectation(zero, parse_pauli_string("Z0")), 1.0);
  EXPECT_DOUBLE_EQ(pauli_expectation(zero, parse_pauli_string("X0")), 0.0);
  EXPECT_NEAR(pauli_expectation(bell(), parse_pauli_string("Z0 Z1")), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(pauli_expectation(QuantumState::basis(2, 1), parse_pauli_string("Z0")), -1.0);
  EXPECT_THROW(pauli_expectation(zero, parse_pauli_string("Z0 X0")), DataError);
  EXPECT_THROW(pauli_expectation(zero, parse_pauli_string("Z2")), DataError);
  EXPECT_THROW(parse_pauli_string("Q0"), DataError);
  EXPECT_THROW(parse_pauli_string("Z"), DataError);
}

TEST(PauliExpectation, MatchesDenseOperators) {
  Rng rng(9);
  Eigen::VectorXcd v(16);
  for (auto& a : v) a = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
  v.normalize();
  const QuantumState psi = QuantumState::from_amplitudes(v);
  const char* strings[] = {"X0 Y2", "Z1 Z3", "Y0 Y1 X3", "X2", "Y3 Z0"};
  const std::vector<std::vector<std::pair<std::size_t, char>>> ops = {
      {{0, 'X'}, {2, 'Y'}}, {{1, 'Z'}, {3, 'Z'}}, {{0, 'Y'}, {1, 'Y'}, {3, 'X'}}, {{2, 'X'}}, {{3, 'Y'}, {0, 'Z'}}};
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const cplx ref = v.dot(testing::dense_pauli(4, ops[k]) * v);
    EXPECT_NEAR(pauli_expectation(psi, parse_pauli_string(strings[k])), ref.real(), 1e-14) << strings[k];
  }
}

TEST(CorrelatorVector, ProductAndBellStates) {
  const CorrelatorVector c = correlator_vector(QuantumState(2), 0, 1);
  EXPECT_EQ(c, (CorrelatorVector{1, 0, 0, 0, 0, 0, 0, 0, 0}));
  const CorrelatorVector b = correlator_vector(bell(), 0, 1);
  EXPECT_NEAR(b[0], 1, 1e-15);
  EXPECT_NEAR(b[1], 1, 1e-15);
  EXPECT_NEAR(b[2], -1, 1e-15);
  EXPECT_THROW(correlator_vector(bell(), 1, 1), DataError);
}

TEST(CorrelatorVector, OrderOfMixedTerms) {
  Rng rng(12);
  EvolutionParams p;
  p.schedule = {0.4, 0.9, 1.3};
  const Graph g = testing::random_nonempty_graph(3, 0.7, rng);
  const QuantumState psi = build_graph_state(g, p, QuantumState(3));
  const CorrelatorVector c = correlator_vector(psi, 0, 2);
  const char* names[] = {"Z0 Z2", "X0 X2", "Y0 Y2", "X0 Z2", "X0 Y2", "Y0 Z2", "X2 Z0", "X2 Y0", "Y2 Z0"};
  for (int m = 0; m < 9; ++m) EXPECT_NEAR(c[m], pauli_expectation(psi, parse_pauli_string(names[m])), 1e-15);
}

TEST(CorrelatorVector, RelabellingSymmetry) {
  Rng rng(13);
  const Graph g = testing::random_nonempty_graph(5, 0.5, rng);
  EvolutionParams p;
  p.schedule = {0.3, 1.1, -0.7};
  p.delta = 0.2;
  const QuantumState psi = build_graph_state(g, p, QuantumState(5));
  const auto pi = testing::random_permutation_of(5, rng);
  const QuantumState moved = QuantumState::from_amplitudes(permute_amplitudes(psi.amplitudes(), pi));
  const QuantumState rebuilt = build_graph_state(permute(g, pi), p, QuantumState(5));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      if (i == j) continue;
      const auto a = correlator_vector(psi, i, j);
      const auto b = correlator_vector(moved, pi[i], pi[j]);
      const auto c = correlator_vector(rebuilt, pi[i], pi[j]);
      for (int m = 0; m < 9; ++m) {
        EXPECT_NEAR(a[m], b[m], 1e-14);
        EXPECT_NEAR(a[m], c[m], 1e-12);
      }
    }
}

TEST(OccupationCovariance, ZeroMixingGivesZero) {
  Rng rng(14);
  const Graph g = testing::random_graph(5, 0.5, rng);
  EXPECT_LE(occupation_covariance_bruteforce(g, 0.0, 1.3, 0.4).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(OccupationCovariance, DistantPathEndsUncorrelated) {
  Rng rng(15);
  const Graph p4 = testing::path_graph(4);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXd c = occupation_covariance_bruteforce(p4, rng.uniform(0, 3), rng.uniform(0, 3),
                                                               rng.uniform(-1, 1));
    EXPECT_LE(std::abs(c(0, 3)), 1e-12);
    EXPECT_LE((c - c.transpose()).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(OccupationCovariance, SignConventionDoesNotMatter) {
  Rng rng(16);
  const Graph g = testing::random_nonempty_graph(5, 0.5, rng);
  CovarianceConventions plus;
  plus.occupation = Occupation::plus_z;
  const Eigen::MatrixXd a = occupation_covariance_bruteforce(g, 0.7, 0.9, 0.3);
  const Eigen::MatrixXd b = occupation_covariance_bruteforce(g, 0.7, 0.9, 0.3, plus);
  EXPECT_LE((a - b).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(OccupationCovariance, CapIsEnforced) {
  CovarianceConventions conv;
  conv.qubit_cap = 4;
  EXPECT_THROW(occupation_covariance_bruteforce(testing::path_graph(5), 0.1, 0.1, 0.0, conv), CapacityError);
}

}  // namespace
}  // namespace qpe
