#include "qpe/classical_pe.hpp"

#include "qpe/error.hpp"
#include "qpe/spectral.hpp"

#include <algorithm>
#include <queue>

namespace qpe {

PETensor rrwp(const Graph& g, std::size_t K) {
  if (K == 0) throw_data("rrwp needs K >= 1");
  const std::size_t n = g.num_nodes();
  PETensor out(n, K, {{"encoding", "rrwp"}, {"params", {{"K", K}}}, {"normalization", "none"}});

  std::vector<double> prev(n * n, 0.0), next(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) prev[i * n + i] = 1.0;
  std::vector<double> inv_deg(n, 0.0);
  for (NodeId i = 0; i < n; ++i)
    if (g.degree(i) > 0) inv_deg[i] = 1.0 / static_cast<double>(g.degree(i));

  std::vector<double> terms;
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, j, k) = prev[i * n + j];
    if (k + 1 == K) break;
    // (P M)_{ij} = sum over l in N(j) of P_{il} / deg(l)
    for (std::size_t i = 0; i < n; ++i) {
      for (NodeId j = 0; j < n; ++j) {
        terms.clear();
        for (const Neighbor& l : g.neighbors(j)) terms.push_back(prev[i * n + l.node] * inv_deg[l.node]);
        std::sort(terms.begin(), terms.end());
        double s = 0.0;
        for (double x : terms) s += x;
        next[i * n + j] = s;
      }
    }
    std::swap(prev, next);
  }
  return out;
}

Eigen::MatrixXd rwse(const Graph& g, std::size_t K) {
  const PETensor p = rrwp(g, K);
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  Eigen::MatrixXd out(n, static_cast<Eigen::Index>(K));
  for (Eigen::Index i = 0; i < n; ++i)
    for (std::size_t k = 0; k < K; ++k)
      out(i, static_cast<Eigen::Index>(k)) = p(static_cast<std::size_t>(i), static_cast<std::size_t>(i), k);
  return out;
}

LaplacianEigvecs laplacian_eigvecs(const Graph& g, std::size_t d, LaplacianMode mode) {
  if (d == 0 || d > g.num_nodes())
    throw_data("laplacian_eigvecs: d=" + std::to_string(d) + " must be in [1, N=" +
               std::to_string(g.num_nodes()) + "]");
  const SymmetricEigen eig = symmetric_eigen(laplacian(g, mode));
  const auto dd = static_cast<Eigen::Index>(d);
  LaplacianEigvecs out{eig.vectors.leftCols(dd), eig.values.head(dd), {}};
  for (auto [first, last] : eig.degenerate_clusters)
    if (first < d) out.degenerate_clusters.emplace_back(first, std::min(last, d));
  return out;
}

Eigen::MatrixXi spd_matrix(const Graph& g) {
  const auto n = g.num_nodes();
  const int sentinel = static_cast<int>(n);
  Eigen::MatrixXi d = Eigen::MatrixXi::Constant(static_cast<Eigen::Index>(n),
                                                static_cast<Eigen::Index>(n), sentinel);
  std::queue<NodeId> q;
  for (NodeId s = 0; s < n; ++s) {
    d(s, s) = 0;
    q.push(s);
    while (!q.empty()) {
      const NodeId u = q.front();
      q.pop();
      for (const Neighbor& v : g.neighbors(u)) {
        if (d(s, v.node) == sentinel && v.node != s) {
          d(s, v.node) = d(s, u) + 1;
          q.push(v.node);
        }
      }
    }
  }
  return d;
}

}  // namespace qpe
