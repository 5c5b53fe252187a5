#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <utility>
#include <vector>

namespace qpe {

/// Eigenpairs of a real symmetric matrix, each column sign-fixed.
struct SymmetricEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  /// Half-open index ranges [first, last) of numerically degenerate clusters.
  std::vector<std::pair<std::size_t, std::size_t>> degenerate_clusters;
};

inline constexpr double degeneracy_gap = 1e-9;

/// Flips each column so that its largest-magnitude entry is positive; ties go
/// to the lowest index.
void fix_signs(Eigen::MatrixXd& vectors);

/// Ascending eigenvalues with matching sign-fixed eigenvectors.
SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& m);

/// Same eigenpairs in descending eigenvalue order.
SymmetricEigen symmetric_eigen_descending(const Eigen::MatrixXd& m);

std::vector<std::pair<std::size_t, std::size_t>> find_degenerate_clusters(
    const Eigen::VectorXd& sorted_values, double gap = degeneracy_gap);

}  // namespace qpe
