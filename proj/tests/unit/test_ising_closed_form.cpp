#include "oracles.hpp"

#include "qpe/error.hpp"
#include "qpe/ising_closed_form.hpp"
#include "qpe/quantum_sim.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace qpe {
namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

TEST(ClosedForm, TrivialMixingAngles) {
  Rng rng(41);
  const Graph g = testing::random_nonempty_graph(6, 0.5, rng);
  EXPECT_LE(max_abs(closed_form_covariance(g, {0.0, 1.2, 0.3})), 1e-15);
  EXPECT_LE(max_abs(closed_form_covariance(g, {std::numbers::pi / 2, 1.2, 0.3})), 1e-15);
}

TEST(ClosedForm, PathEndsAreExactlyZero) {
  Rng rng(42);
  const Graph p4 = testing::path_graph(4);
  for (int trial = 0; trial < 20; ++trial) {
    const IsingPEParams p{rng.uniform(0, 3), rng.uniform(0, 3), rng.uniform(-1, 1)};
    EXPECT_LE(std::abs(closed_form_covariance(p4, p)(0, 3)), 1e-12);
  }
}

TEST(ClosedForm, MatchesStatevectorOracle) {
  Rng rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng.uniform_int(0, 8);
    const Graph g = testing::random_graph(n, rng.uniform(0.2, 0.8), rng, trial % 2 == 1);
    const double theta = rng.uniform(0, 2 * std::numbers::pi), t = rng.uniform(0, 2 * std::numbers::pi),
                 delta = rng.uniform(-1.5, 1.5);
    const Eigen::MatrixXd cf = closed_form_covariance(g, {theta, t, delta});
    const Eigen::MatrixXd bf = occupation_covariance_bruteforce(g, theta, t, delta);
    EXPECT_LE(max_abs(cf - bf), 1e-10) << "trial " << trial;
  }
}

TEST(ClosedForm, DistanceBeyondTwoVanishes) {
  Rng rng(44);
  const Graph c8 = testing::cycle_graph(8);
  const Eigen::MatrixXd c = closed_form_covariance(c8, {0.7, 1.3, 0.2});
  EXPECT_EQ(c(0, 3), 0.0);
  EXPECT_EQ(c(0, 4), 0.0);
  EXPECT_NE(c(0, 2), 0.0);
}

TEST(ClosedForm, TensorSlicesMatchSingleCalls) {
  Rng rng(45);
  const Graph g = testing::random_nonempty_graph(7, 0.4, rng);
  const std::vector<IsingPEParams> ps{{0.3, 0.8, 0.1}, {1.1, 0.2, -0.4}, {2.0, 1.7, 0.0}};
  const PETensor t = closed_form_pe_tensor(g, ps);
  ASSERT_EQ(t.num_slices(), 3u);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(t.slice(k), closed_form_covariance(g, ps[k]));
  EXPECT_EQ(t.metadata()["encoding"], "ising-cf");

  const std::vector<IsingPEParams> zero{{0.0, 1.0, 0.5}};
  EXPECT_TRUE(closed_form_pe_tensor(g, zero).slice(0).isZero());
  EXPECT_THROW(closed_form_pe_tensor(g, {}), DataError);
  EXPECT_THROW(closed_form_covariance(g, {std::nan(""), 1, 1}), DataError);
}

TEST(ClosedForm, Equivariance) {
  Rng rng(46);
  const Graph g = testing::random_graph(10, 0.3, rng, true);
  const auto pi = testing::random_permutation_of(10, rng);
  const IsingPEParams p{0.9, 2.2, 0.35};
  const Eigen::MatrixXd P = permutation_matrix(pi);
  EXPECT_LE(max_abs(closed_form_covariance(permute(g, pi), p) - P * closed_form_covariance(g, p) * P.transpose()),
            1e-12);
}

TEST(ClosedForm, ScalesBeyondSimulationCap) {
  Rng rng(47);
  const Graph g = testing::random_graph(200, 0.02, rng);
  const Eigen::MatrixXd c = closed_form_covariance(g, {0.5, 0.7, 0.2});
  EXPECT_TRUE(c.allFinite());
  EXPECT_LE(max_abs(c - c.transpose()), 1e-15);
}

}  // namespace
}  // namespace qpe
