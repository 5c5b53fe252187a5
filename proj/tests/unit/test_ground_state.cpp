#include "oracles.hpp"

#include "qpe/error.hpp"
#include "qpe/ground_state.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace qpe {
namespace {

using testing::complete_graph;

const Graph k2 = Graph::from_pairs(2, {{0, 1}});
const Graph single(1, {});

TEST(IsingEnergy, Examples) {
  const Graph tri = complete_graph(3);
  const Bitstring zeros{0, 0, 0}, one{1, 0, 0}, both{1, 1};
  EXPECT_EQ(ising_energy(zeros, tri, 0.5), 0.0);
  EXPECT_EQ(ising_energy(one, tri, 0.5), -0.5);
  EXPECT_EQ(ising_energy(both, k2, 0.5), 0.0);
  EXPECT_THROW(ising_energy(both, tri, 0.5), DataError);
}

TEST(GroundStateManifold, SmallGraphs) {
  const auto tri = ground_state_manifold(complete_graph(3), 0.5);
  EXPECT_EQ(tri.bitstrings, (std::vector<Bitstring>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  EXPECT_EQ(tri.energy, -0.5);
  EXPECT_EQ(ground_state_manifold(k2, 0.5).bitstrings, (std::vector<Bitstring>{{1, 0}, {0, 1}}));
  EXPECT_EQ(ground_state_manifold(single, 0.5).bitstrings, (std::vector<Bitstring>{{1}}));
}

TEST(GroundStateManifold, BranchAndBoundMatchesBruteForce) {
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng.uniform_int(0, 13);
    const Graph g = testing::random_graph(n, rng.uniform(0.1, 0.7), rng);
    auto got = ground_state_manifold(g, 0.5).bitstrings;
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, testing::brute_force_mis(g)) << "trial " << trial;
  }
}

TEST(GroundStateManifold, DeltaOutsideUnitIntervalUsesEnumeration) {
  const Graph p3 = testing::path_graph(3);
  EXPECT_EQ(ground_state_manifold(p3, -0.5).bitstrings, (std::vector<Bitstring>{{0, 0, 0}}));
  const auto big = ground_state_manifold(p3, 1.5);
  EXPECT_EQ(big.bitstrings, (std::vector<Bitstring>{{1, 0, 1}}));
  EXPECT_DOUBLE_EQ(big.energy, -3.0);
  EXPECT_EQ(ground_state_manifold(p3, 2.5).bitstrings, (std::vector<Bitstring>{{1, 1, 1}}));
}

TEST(GroundStateManifold, CapsAreEnforced) {
  GroundStateOptions opts;
  opts.max_nodes = 4;
  EXPECT_THROW(ground_state_manifold(testing::path_graph(5), 0.5, opts), CapacityError);
  GroundStateOptions few;
  few.max_states = 2;
  EXPECT_THROW(ground_state_manifold(k2, 1.0, few), CapacityError);
  EXPECT_THROW(ground_state_manifold(complete_graph(4), 0.5, few), CapacityError);
}

TEST(GsCorrelation, Examples) {
  const Eigen::MatrixXd t = gs_correlation_matrix(complete_graph(3), 0.5);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(t(i, j), i == j ? 1.0 : -1.0 / 3.0, 1e-15);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  EXPECT_NEAR(es.eigenvalues()[0], 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(es.eigenvalues()[2], 4.0 / 3.0, 1e-12);
  EXPECT_EQ(gs_correlation_matrix(k2, 0.5), (Eigen::MatrixXd(2, 2) << 1, -1, -1, 1).finished());
  EXPECT_EQ(gs_correlation_matrix(single, 0.5), Eigen::MatrixXd::Ones(1, 1));
}

TEST(GsEigvecPE, Examples) {
  EXPECT_NEAR(gs_eigvec_pe(single, 0.5, 1).vectors(0, 0), 1.0, 1e-15);
  const GsEigvecPE e = gs_eigvec_pe(k2, 0.5, 1);
  const double r = 1 / std::sqrt(2.0);
  EXPECT_NEAR(e.vectors(0, 0), r, 1e-12);
  EXPECT_NEAR(e.vectors(1, 0), -r, 1e-12);
  EXPECT_NEAR(e.values[0], 2.0, 1e-12);
  const GsEigvecPE t = gs_eigvec_pe(complete_graph(3), 0.5, 3);
  EXPECT_NEAR(t.values[0], 4.0 / 3.0, 1e-12);
  EXPECT_NEAR(t.values[1], 4.0 / 3.0, 1e-12);
  EXPECT_NEAR(t.values[2], 1.0 / 3.0, 1e-12);
  ASSERT_FALSE(t.degenerate_clusters.empty());
  EXPECT_EQ(t.degenerate_clusters[0], (std::pair<std::size_t, std::size_t>{0, 2}));
}

TEST(GsEigvecPE, AboveCapFlagsAndZeros) {
  GroundStateOptions opts;
  opts.max_nodes = 3;
  const GsEigvecPE e = gs_eigvec_pe(testing::path_graph(5), 0.5, 2, opts);
  EXPECT_TRUE(e.above_cap);
  EXPECT_TRUE(e.vectors.isZero());
  EXPECT_EQ(e.vectors.rows(), 5);
}

TEST(MaximumIndependentSets, NodeLists) {
  const auto sets = maximum_independent_sets(testing::path_graph(4));
  // {0,2}, {0,3}, {1,3}
  ASSERT_EQ(sets.size(), 3u);
  for (const auto& s : sets) EXPECT_EQ(s.size(), 2u);
}

}  // namespace
}  // namespace qpe
