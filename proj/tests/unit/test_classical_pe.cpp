#include "oracles.hpp"

#include "qpe/classical_pe.hpp"
#include "qpe/error.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace qpe {
namespace {

using testing::complete_graph;
using testing::path_graph;

const Graph k2 = Graph::from_pairs(2, {{0, 1}});

TEST(Rrwp, K2Slices) {
  const PETensor t = rrwp(k2, 3);
  ASSERT_EQ(t.num_slices(), 3u);
  Eigen::Matrix2d anti;
  anti << 0, 1, 1, 0;
  EXPECT_EQ(t.slice(0), Eigen::MatrixXd::Identity(2, 2));
  EXPECT_EQ(t.slice(1), Eigen::MatrixXd(anti));
  EXPECT_EQ(t.slice(2), Eigen::MatrixXd::Identity(2, 2));
  EXPECT_EQ(t.metadata()["encoding"], "rrwp");
}

TEST(Rrwp, PathSecondPower) {
  const PETensor t = rrwp(path_graph(3), 3);
  EXPECT_DOUBLE_EQ(t(0, 2, 2), 0.5);
}

TEST(Rrwp, SingleStepIsIdentity) {
  Rng rng(5);
  const Graph g = testing::random_graph(6, 0.5, rng);
  const PETensor t = rrwp(g, 1);
  ASSERT_EQ(t.num_slices(), 1u);
  EXPECT_EQ(t.slice(0), Eigen::MatrixXd::Identity(6, 6));
  EXPECT_THROW(rrwp(g, 0), DataError);
}

TEST(Rrwp, MatchesDenseMatrixPowers) {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = testing::random_graph(8, 0.35, rng);
    const Eigen::MatrixXd M = random_walk_matrix(g).matrix;
    const PETensor t = rrwp(g, 6);
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(8, 8);
    for (std::size_t k = 0; k < 6; ++k) {
      EXPECT_LE((t.slice(k) - power).cwiseAbs().maxCoeff(), 1e-14);
      power = power * M;
    }
  }
}

TEST(Rrwp, RelabellingPermutesBitExactly) {
  Rng rng(2);
  const Graph g = testing::random_graph(9, 0.4, rng);
  const auto pi = testing::random_permutation_of(9, rng);
  const PETensor a = rrwp(g, 8), b = rrwp(permute(g, pi), 8);
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j)
      for (std::size_t k = 0; k < 8; ++k) ASSERT_EQ(a(i, j, k), b(pi[i], pi[j], k));
}

TEST(Rwse, ReturnProbabilities) {
  const Eigen::MatrixXd r = rwse(k2, 2);
  EXPECT_EQ(r, (Eigen::MatrixXd(2, 2) << 1, 0, 1, 0).finished());
  const Eigen::MatrixXd tri = rwse(complete_graph(3), 2);
  EXPECT_TRUE(tri.col(1).isZero());
  EXPECT_TRUE(tri.col(0).isOnes());
  const Eigen::MatrixXd c4 = rwse(testing::cycle_graph(4), 3);
  EXPECT_DOUBLE_EQ(c4(0, 2), 0.5);
}

TEST(LaplacianEigvecs, PathKernel) {
  const LaplacianEigvecs e = laplacian_eigvecs(path_graph(3), 1, LaplacianMode::combinatorial);
  const double c = 1 / std::sqrt(3.0);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(e.vectors(i, 0), c, 1e-12);
  EXPECT_NEAR(e.values[0], 0.0, 1e-12);
}

TEST(LaplacianEigvecs, K2AndTriangle) {
  const LaplacianEigvecs e = laplacian_eigvecs(k2, 2, LaplacianMode::combinatorial);
  const double c = 1 / std::sqrt(2.0);
  EXPECT_NEAR(e.vectors(0, 0), c, 1e-12);
  EXPECT_NEAR(e.vectors(1, 0), c, 1e-12);
  EXPECT_NEAR(e.vectors(0, 1), c, 1e-12);
  EXPECT_NEAR(e.vectors(1, 1), -c, 1e-12);

  const LaplacianEigvecs t = laplacian_eigvecs(complete_graph(3), 3, LaplacianMode::combinatorial);
  EXPECT_NEAR(t.values[0], 0, 1e-12);
  EXPECT_NEAR(t.values[1], 3, 1e-12);
  EXPECT_NEAR(t.values[2], 3, 1e-12);
  ASSERT_EQ(t.degenerate_clusters.size(), 1u);
  EXPECT_EQ(t.degenerate_clusters[0], (std::pair<std::size_t, std::size_t>{1, 3}));
  EXPECT_THROW(laplacian_eigvecs(k2, 3, LaplacianMode::combinatorial), DataError);
  EXPECT_THROW(laplacian_eigvecs(k2, 0, LaplacianMode::combinatorial), DataError);
}

TEST(Spd, PathTriangleAndDisconnected) {
  Eigen::Matrix3i p;
  p << 0, 1, 2, 1, 0, 1, 2, 1, 0;
  EXPECT_EQ(spd_matrix(path_graph(3)), Eigen::MatrixXi(p));
  const Eigen::MatrixXi t = spd_matrix(complete_graph(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(t(i, j), i == j ? 0 : 1);
  const Eigen::MatrixXi d = spd_matrix(Graph::from_pairs(4, {{0, 1}, {2, 3}}));
  EXPECT_EQ(d(0, 2), 4);
  EXPECT_EQ(d(1, 3), 4);
  EXPECT_EQ(d(2, 3), 1);
}

}  // namespace
}  // namespace qpe
