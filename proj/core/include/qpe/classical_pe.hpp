#pragma once

#include "qpe/graph.hpp"
#include "qpe/pe_tensor.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <utility>
#include <vector>

namespace qpe {

/// Slices M^0 .. M^{K-1} of the random-walk matrix M = D^{-1} A.
///
/// Each entry is accumulated in sorted-term order, so relabelling the graph
/// permutes the result bit-exactly.
PETensor rrwp(const Graph& g, std::size_t K);

/// Return probabilities: row i is the diagonal fiber of rrwp(g, K) at (i, i).
Eigen::MatrixXd rwse(const Graph& g, std::size_t K);

struct LaplacianEigvecs {
  Eigen::MatrixXd vectors;  // N x d
  Eigen::VectorXd values;   // d ascending eigenvalues
  /// Degenerate clusters among the returned columns, as [first, last) ranges.
  std::vector<std::pair<std::size_t, std::size_t>> degenerate_clusters;
};

/// The d lowest Laplacian eigenvectors with the deterministic sign rule.
LaplacianEigvecs laplacian_eigvecs(const Graph& g, std::size_t d, LaplacianMode mode);

/// Breadth-first distances. Disconnected pairs get the sentinel value N.
Eigen::MatrixXi spd_matrix(const Graph& g);

}  // namespace qpe
