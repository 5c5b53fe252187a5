#include "qpe/attention.hpp"

#include "qpe/error.hpp"
#include "qpe/random.hpp"

#include <cmath>
#include <numbers>

namespace qpe {

Eigen::MatrixXd attention_from_state(const QuantumState& psi, const Gamma& gamma, bool softmax) {
  const auto n = static_cast<Eigen::Index>(psi.num_qubits());
  Eigen::MatrixXd A(n, n);
  const double diag = gamma[0] + gamma[1] + gamma[2];
  for (Eigen::Index i = 0; i < n; ++i) {
    A(i, i) = diag;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const CorrelatorVector c = correlator_vector(psi, static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      double v = 0.0;
      for (std::size_t m = 0; m < 9; ++m) v += gamma[m] * c[m];
      A(i, j) = v;
    }
  }
  if (softmax) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double mx = A.row(i).maxCoeff();
      A.row(i) = (A.row(i).array() - mx).exp().matrix();
      A.row(i) /= A.row(i).sum();
    }
  }
  return A;
}

Eigen::MatrixXd quantum_attention_matrix(const Graph& g, const EvolutionParams& params, const Gamma& gamma,
                                         bool softmax, std::size_t qubit_cap) {
  const QuantumState psi = build_graph_state(g, params, QuantumState(g.num_nodes(), qubit_cap));
  return attention_from_state(psi, gamma, softmax);
}

double relu(double x) { return x > 0.0 ? x : 0.0; }
double identity_activation(double x) { return x; }

Eigen::MatrixXd gtqc_layer_forward(const Eigen::MatrixXd& H, const Eigen::MatrixXd& A, const Eigen::MatrixXd& W,
                                   const Activation& activation) {
  if (A.rows() != A.cols() || A.rows() != H.rows())
    throw_data("attention matrix must be N x N with N = rows of H");
  if (W.rows() != 2 * H.cols())
    throw_data("weight matrix must have 2d = " + std::to_string(2 * H.cols()) + " rows, got " +
               std::to_string(W.rows()));
  Eigen::MatrixXd cat(H.rows(), 2 * H.cols());
  cat << A * H, H;
  Eigen::MatrixXd out = cat * W;
  return out.unaryExpr([&](double x) { return activation(x); });
}

Eigen::MatrixXd gtqc_multihead_forward(const Eigen::MatrixXd& H, std::span<const Eigen::MatrixXd> A,
                                       std::span<const Eigen::MatrixXd> W, const Activation& activation) {
  if (A.empty() || A.size() != W.size()) throw_data("need one weight matrix per attention head");
  std::vector<Eigen::MatrixXd> parts;
  Eigen::Index cols = 0;
  for (std::size_t h = 0; h < A.size(); ++h) {
    parts.push_back(gtqc_layer_forward(H, A[h], W[h], activation));
    cols += parts.back().cols();
  }
  Eigen::MatrixXd out(H.rows(), cols);
  Eigen::Index c = 0;
  for (const auto& p : parts) {
    out.middleCols(c, p.cols()) = p;
    c += p.cols();
  }
  return out;
}

double TrigPolynomial::value(double x) const {
  double s = b[0];
  for (Eigen::Index w = 1; w < b.size(); ++w) {
    const double arg = static_cast<double>(w) * u * x;
    s += a[w] * std::sin(arg) + b[w] * std::cos(arg);
  }
  return s;
}

double TrigPolynomial::derivative(double x) const {
  double s = 0.0;
  for (Eigen::Index w = 1; w < b.size(); ++w) {
    const double k = static_cast<double>(w) * u;
    s += k * (a[w] * std::cos(k * x) - b[w] * std::sin(k * x));
  }
  return s;
}

TrigPolynomial spectral_gradient(const std::function<double(double)>& f, std::size_t n_freq,
                                 const SpectralOptions& options) {
  if (!(options.u > 0) || !std::isfinite(options.u)) throw_data("frequency spacing must be positive");
  const std::size_t unknowns = 2 * n_freq + 1;
  const std::size_t points = options.num_points == 0 ? unknowns : options.num_points;
  if (points < unknowns)
    throw_numeric("ill-conditioned spectral fit: " + std::to_string(points) + " samples for " +
                  std::to_string(unknowns) + " coefficients");
  const double period = 2.0 * std::numbers::pi / options.u;
  const auto P = static_cast<Eigen::Index>(points), U = static_cast<Eigen::Index>(unknowns);
  Eigen::MatrixXd M(P, U);
  Eigen::VectorXd y(P);
  for (Eigen::Index p = 0; p < P; ++p) {
    const double x = period * static_cast<double>(p) / static_cast<double>(points);
    y[p] = f(x);
    if (!std::isfinite(y[p])) throw_numeric("observable returned a non-finite value");
    M(p, 0) = 1.0;
    for (std::size_t w = 1; w <= n_freq; ++w) {
      const double arg = static_cast<double>(w) * options.u * x;
      M(p, static_cast<Eigen::Index>(2 * w - 1)) = std::sin(arg);
      M(p, static_cast<Eigen::Index>(2 * w)) = std::cos(arg);
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double rcond = sv[sv.size() - 1] / sv[0];
  if (!(rcond >= 1e-12))
    throw_numeric("ill-conditioned spectral fit (rcond " + std::to_string(rcond) + ")");
  const Eigen::VectorXd coef = svd.solve(y);
  TrigPolynomial out;
  out.u = options.u;
  out.a = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_freq + 1));
  out.b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_freq + 1));
  out.b[0] = coef[0];
  for (std::size_t w = 1; w <= n_freq; ++w) {
    out.a[static_cast<Eigen::Index>(w)] = coef[static_cast<Eigen::Index>(2 * w - 1)];
    out.b[static_cast<Eigen::Index>(w)] = coef[static_cast<Eigen::Index>(2 * w)];
  }
  return out;
}

EvolutionParams draw_head_params(std::size_t layers, std::uint64_t seed, std::size_t head,
                                 const RandomHeadOptions& options) {
  if (layers == 0) throw_data("heads need at least one layer");
  Rng rng(derive_seed(seed, head));
  EvolutionParams p;
  p.schedule.resize(2 * layers + 1);
  for (double& x : p.schedule) x = rng.uniform(0.0, 2.0 * std::numbers::pi);
  p.hamiltonian = options.hamiltonian;
  p.delta = options.delta;
  return p;
}

std::vector<RandomHead> random_heads(const Graph& g, std::size_t n_heads, std::uint64_t seed,
                                     const RandomHeadOptions& options) {
  if (n_heads == 0) throw_data("n_heads must be >= 1");
  std::vector<RandomHead> out;
  for (std::size_t h = 0; h < n_heads; ++h) {
    RandomHead head;
    head.params = draw_head_params(options.layers, seed, h, options);
    head.attention = quantum_attention_matrix(g, head.params, options.gamma, options.softmax, options.qubit_cap);
    out.push_back(std::move(head));
  }
  return out;
}

}  // namespace qpe
