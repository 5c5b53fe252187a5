#include "oracles.hpp"

#include "qpe/attention.hpp"
#include "qpe/error.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace qpe {
namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

EvolutionParams params_of(std::vector<double> schedule, double delta = 0.0) {
  EvolutionParams p;
  p.schedule = std::move(schedule);
  p.delta = delta;
  return p;
}

TEST(AttentionMatrix, ProductStateSelectsOnes) {
  Rng rng(81);
  const Graph g = testing::random_graph(5, 0.5, rng);
  const Eigen::MatrixXd a = quantum_attention_matrix(g, params_of({0, 0, 0}), gamma_zz);
  EXPECT_EQ(a, Eigen::MatrixXd::Ones(5, 5));
}

TEST(AttentionMatrix, DiagonalConvention) {
  Rng rng(82);
  const Graph g = testing::random_nonempty_graph(4, 0.6, rng);
  const Gamma gamma{0.5, -1, 2, 3, 4, 5, 6, 7, 8};
  const Eigen::MatrixXd a = quantum_attention_matrix(g, params_of({0.3, 0.8, 1.1}), gamma);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(a(i, i), 1.5);
}

TEST(AttentionMatrix, SoftmaxRowsSumToOne) {
  Rng rng(83);
  const Graph g = testing::random_nonempty_graph(6, 0.5, rng);
  const Gamma gamma{1, 0.5, -0.3, 0.2, 0, 0.1, -0.7, 0, 0.4};
  const Eigen::MatrixXd a = quantum_attention_matrix(g, params_of({0.3, 0.8, 1.1, 0.4, 2.0}), gamma, true);
  for (Eigen::Index i = 0; i < 6; ++i) EXPECT_NEAR(a.row(i).sum(), 1.0, 1e-12);
  EXPECT_GT(a.minCoeff(), 0.0);
}

TEST(AttentionMatrix, Equivariance) {
  Rng rng(84);
  const Graph g = testing::random_nonempty_graph(7, 0.4, rng, true);
  const auto pi = testing::random_permutation_of(7, rng);
  const Eigen::MatrixXd P = permutation_matrix(pi);
  const Gamma gamma{1, 0.5, -0.3, 0.2, 0.9, 0.1, -0.7, 0.3, 0.4};
  for (bool softmax : {false, true}) {
    const auto p = params_of({0.7, 1.2, -0.4}, 0.3);
    const Eigen::MatrixXd a = quantum_attention_matrix(g, p, gamma, softmax);
    const Eigen::MatrixXd b = quantum_attention_matrix(permute(g, pi), p, gamma, softmax);
    EXPECT_LE(max_abs(b - P * a * P.transpose()), 1e-12);
  }
}

TEST(AttentionMatrix, ZzAttentionIsSymmetricPsd) {
  Rng rng(85);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + rng.uniform_int(0, 6);
    const Graph g = testing::random_graph(n, 0.5, rng);
    std::vector<double> s;
    for (int k = 0; k < 5; ++k) s.push_back(rng.uniform(0, 2 * std::numbers::pi));
    const Eigen::MatrixXd a = quantum_attention_matrix(g, params_of(s, rng.uniform(-1, 1)), gamma_zz);
    EXPECT_LE(max_abs(a - a.transpose()), 1e-14);
    EXPECT_GE(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues().minCoeff(), -1e-10);
  }
}

TEST(AttentionMatrix, CapIsEnforced) {
  EXPECT_THROW(quantum_attention_matrix(testing::path_graph(6), params_of({0, 0, 0}), gamma_zz, false, 5),
               CapacityError);
}

TEST(LayerForward, ZeroAttentionPassThrough) {
  Rng rng(86);
  const Eigen::MatrixXd H = Eigen::MatrixXd::Random(4, 3);
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(6, 3);
  W.bottomRows(3).setIdentity();
  EXPECT_EQ(gtqc_layer_forward(H, Eigen::MatrixXd::Zero(4, 4), W, identity_activation), H);
}

TEST(LayerForward, IdentityAttention) {
  const Eigen::MatrixXd H = Eigen::MatrixXd::Random(4, 2);
  const Eigen::MatrixXd W = Eigen::MatrixXd::Random(4, 3);
  Eigen::MatrixXd cat(4, 4);
  cat << H, H;
  const Eigen::MatrixXd ref = (cat * W).cwiseMax(0.0);
  EXPECT_LE(max_abs(gtqc_layer_forward(H, Eigen::MatrixXd::Identity(4, 4), W) - ref), 1e-15);
}

TEST(LayerForward, MatchesStraightLineReference) {
  Rng rng(87);
  const int n = 5, d = 3, dh = 4;
  Eigen::MatrixXd H(n, d), A(n, n), W(2 * d, dh);
  for (auto* m : {&H, &A, &W})
    for (Eigen::Index i = 0; i < m->size(); ++i) m->data()[i] = rng.uniform(-1, 1);
  const Eigen::MatrixXd out = gtqc_layer_forward(H, A, W);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < dh; ++c) {
      double acc = 0;
      for (int f = 0; f < d; ++f) {
        double ah = 0;
        for (int j = 0; j < n; ++j) ah += A(i, j) * H(j, f);
        acc += ah * W(f, c) + H(i, f) * W(d + f, c);
      }
      EXPECT_NEAR(out(i, c), acc > 0 ? acc : 0.0, 1e-12);
    }
}

TEST(LayerForward, EquivariantAndShapeChecked) {
  Rng rng(88);
  const Eigen::MatrixXd H = Eigen::MatrixXd::Random(5, 2), A = Eigen::MatrixXd::Random(5, 5),
                        W = Eigen::MatrixXd::Random(4, 3);
  const auto pi = testing::random_permutation_of(5, rng);
  const Eigen::MatrixXd P = permutation_matrix(pi);
  EXPECT_LE(max_abs(gtqc_layer_forward(P * H, P * A * P.transpose(), W) - P * gtqc_layer_forward(H, A, W)), 1e-14);
  EXPECT_THROW(gtqc_layer_forward(H, Eigen::MatrixXd::Zero(4, 4), W), DataError);
  EXPECT_THROW(gtqc_layer_forward(H, A, Eigen::MatrixXd::Zero(3, 3)), DataError);
}

TEST(LayerForward, MultiHeadConcatenates) {
  const Eigen::MatrixXd H = Eigen::MatrixXd::Random(3, 2);
  const std::vector<Eigen::MatrixXd> A{Eigen::MatrixXd::Random(3, 3), Eigen::MatrixXd::Random(3, 3)};
  const std::vector<Eigen::MatrixXd> W{Eigen::MatrixXd::Random(4, 2), Eigen::MatrixXd::Random(4, 5)};
  const Eigen::MatrixXd out = gtqc_multihead_forward(H, A, W);
  ASSERT_EQ(out.cols(), 7);
  EXPECT_EQ(out.leftCols(2), gtqc_layer_forward(H, A[0], W[0]));
  EXPECT_EQ(out.rightCols(5), gtqc_layer_forward(H, A[1], W[1]));
  EXPECT_THROW(gtqc_multihead_forward(H, std::span(A), std::span(W).first(1)), DataError);
}

TEST(SpectralGradient, KnownTrigFunction) {
  const TrigPolynomial f = spectral_gradient([](double x) { return std::cos(2 * x); }, 2);
  EXPECT_NEAR(f.derivative(0.3), -2 * std::sin(0.6), 1e-10);
  EXPECT_NEAR(f.value(1.1), std::cos(2.2), 1e-12);
}

TEST(SpectralGradient, ConstantHasZeroDerivative) {
  const TrigPolynomial f = spectral_gradient([](double) { return 0.75; }, 3);
  for (double x : {0.0, 0.5, 2.0, 5.0}) EXPECT_NEAR(f.derivative(x), 0.0, 1e-12);
}

TEST(SpectralGradient, MixingAngleObservable) {
  const Graph k2 = Graph::from_pairs(2, {{0, 1}});
  auto z0 = [&](double theta) {
    const QuantumState psi = build_graph_state(k2, params_of({theta, 0.8, 0.4}), QuantumState(2));
    return pauli_expectation(psi, parse_pauli_string("Z0"));
  };
  SpectralOptions opts;
  opts.u = 2.0;
  const TrigPolynomial f = spectral_gradient(z0, 2, opts);
  const double h = 1e-5;
  for (double x : {0.1, 0.9, 2.4}) EXPECT_NEAR(f.derivative(x), (z0(x + h) - z0(x - h)) / (2 * h), 1e-5);
}

TEST(SpectralGradient, InsufficientPointsRaise) {
  SpectralOptions opts;
  opts.num_points = 4;
  EXPECT_THROW(spectral_gradient([](double x) { return std::sin(x); }, 2, opts), NumericError);
  SpectralOptions bad;
  bad.u = 0.0;
  EXPECT_THROW(spectral_gradient([](double x) { return x; }, 1, bad), DataError);
}

TEST(RandomHeads, DeterministicAndConsistent) {
  Rng rng(89);
  const Graph g = testing::random_nonempty_graph(5, 0.5, rng);
  const auto a = random_heads(g, 3, 42);
  const auto b = random_heads(g, 3, 42);
  ASSERT_EQ(a.size(), 3u);
  for (std::size_t h = 0; h < 3; ++h) {
    EXPECT_EQ(a[h].attention, b[h].attention);
    EXPECT_EQ(a[h].params.schedule, b[h].params.schedule);
    for (double x : a[h].params.schedule) {
      EXPECT_GE(x, 0.0);
      EXPECT_LT(x, 2 * std::numbers::pi);
    }
  }
  EXPECT_NE(a[0].attention, a[1].attention);
  const auto one = random_heads(g, 1, 42);
  EXPECT_EQ(one[0].attention, quantum_attention_matrix(g, draw_head_params(1, 42, 0), gamma_zz));
  EXPECT_EQ(one[0].attention, a[0].attention);
  EXPECT_THROW(random_heads(g, 0, 1), DataError);
}

TEST(RandomHeads, Equivariance) {
  Rng rng(90);
  const Graph g = testing::random_nonempty_graph(6, 0.5, rng);
  const auto pi = testing::random_permutation_of(6, rng);
  const Eigen::MatrixXd P = permutation_matrix(pi);
  const auto a = random_heads(g, 2, 7), b = random_heads(permute(g, pi), 2, 7);
  for (std::size_t h = 0; h < 2; ++h) EXPECT_LE(max_abs(b[h].attention - P * a[h].attention * P.transpose()), 1e-12);
}

}  // namespace
}  // namespace qpe
