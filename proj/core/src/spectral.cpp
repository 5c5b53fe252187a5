#include "qpe/spectral.hpp"

#include "qpe/error.hpp"

#include <cmath>

namespace qpe {

void fix_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      const double a = std::abs(vectors(r, c));
      // Near-equal magnitudes count as a tie so the lowest index wins.
      if (a > best_abs + 1e-12) {
        best_abs = a;
        best = r;
      }
    }
    if (vectors.rows() > 0 && vectors(best, c) < 0) vectors.col(c) *= -1.0;
  }
}

std::vector<std::pair<std::size_t, std::size_t>> find_degenerate_clusters(
    const Eigen::VectorXd& values, double gap) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const auto n = static_cast<std::size_t>(values.size());
  std::size_t start = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i == n || std::abs(values[static_cast<Eigen::Index>(i)] -
                           values[static_cast<Eigen::Index>(i - 1)]) >= gap) {
      if (i - start > 1) out.emplace_back(start, i);
      start = i;
    }
  }
  return out;
}

SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw_data("eigendecomposition needs a square matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) throw_numeric("symmetric eigensolver did not converge");
  SymmetricEigen out{solver.eigenvalues(), solver.eigenvectors(), {}};
  fix_signs(out.vectors);
  out.degenerate_clusters = find_degenerate_clusters(out.values);
  return out;
}

SymmetricEigen symmetric_eigen_descending(const Eigen::MatrixXd& m) {
  SymmetricEigen asc = symmetric_eigen(m);
  SymmetricEigen out;
  out.values = asc.values.reverse();
  out.vectors = asc.vectors.rowwise().reverse();
  out.degenerate_clusters = find_degenerate_clusters(out.values);
  return out;
}

}  // namespace qpe
