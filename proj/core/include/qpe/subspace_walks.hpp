#pragma once

#include "qpe/graph.hpp"
#include "qpe/pe_tensor.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <vector>

namespace qpe {

/// XY Hamiltonian restricted to the k-particle sector (the "state graph").
///
/// Basis states are sorted node subsets of size k in lexicographic order.
/// Moving one particle along edge (u,v) onto an empty node has amplitude
/// 2 J_uv.
class SubspaceOperator {
 public:
  SubspaceOperator(const Graph& g, std::size_t k);

  std::size_t particles() const noexcept { return k_; }
  std::size_t dimension() const noexcept { return basis_.size(); }
  const std::vector<std::vector<NodeId>>& basis() const noexcept { return basis_; }
  /// Row of a subset given in any order; throws if the subset is invalid.
  std::size_t index_of(std::span<const NodeId> subset) const;

  const Eigen::SparseMatrix<double, Eigen::RowMajor>& matrix() const noexcept { return matrix_; }
  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(matrix_); }

  /// y = H x with every row accumulated in sorted-term order.
  Eigen::VectorXd apply_sorted(const Eigen::VectorXd& x) const;

 private:
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<std::vector<NodeId>> basis_;
  std::map<std::vector<NodeId>, std::size_t> index_;
  Eigen::SparseMatrix<double, Eigen::RowMajor> matrix_;
};

SubspaceOperator xy_subspace_hamiltonian(const Graph& g, std::size_t k);

enum class InitialKind {
  localized,      // a single basis state given by `nodes`
  all_localized,  // every basis state separately (one row each)
  uniform_pairs,  // equal superposition of all basis states of the sector
  uniform_edges,  // equal superposition of the pair states that are edges (k = 2)
};

struct InitialDistribution {
  InitialKind kind = InitialKind::all_localized;
  std::vector<NodeId> nodes;

  static InitialDistribution localized(std::vector<NodeId> nodes) {
    return {InitialKind::localized, std::move(nodes)};
  }
  static InitialDistribution of(InitialKind kind) { return {kind, {}}; }
};

std::string_view to_string(InitialKind kind);
InitialKind parse_initial_kind(std::string_view name);

/// Normalised real amplitude vector for a single-state initial distribution.
/// An empty uniform_edges superposition (edgeless graph) is the zero vector.
Eigen::VectorXd initial_amplitudes(const SubspaceOperator& op, const Graph& g,
                                   const InitialDistribution& init);

/// Dense eigendecomposition of a sector Hamiltonian, reused for any t.
class SubspacePropagator {
 public:
  explicit SubspacePropagator(const SubspaceOperator& op);

  /// U(t) = e^{-iHt}.
  Eigen::MatrixXcd propagator(double t) const;
  /// Row a holds |<b|U(t)|a>|^2 over b.
  Eigen::MatrixXd transition_probabilities(double t) const;
  /// |<b|U(t)|psi>|^2 over b.
  Eigen::VectorXd evolve_probabilities(const Eigen::VectorXcd& psi, double t) const;

  const Eigen::VectorXd& eigenvalues() const noexcept { return values_; }

 private:
  Eigen::VectorXd values_;
  Eigen::MatrixXd vectors_;
};

/// Probability table over sector basis states, one row per initial state:
/// `dimension` rows for all_localized, a single row otherwise.
Eigen::MatrixXd cqrw_probabilities(const Graph& g, std::size_t k, double t,
                                   const InitialDistribution& init);

/// K sorted i.i.d. uniform draws from [t_min, t_max].
std::vector<double> sample_times(std::size_t K, double t_min, double t_max, std::uint64_t seed);

/// Slices [I, X(t_1), ..., X(t_K)].
///
/// One walker: X(t)_{ij} = |<j|e^{-iH_1 t}|i>|^2 (initial must be all_localized).
/// Two walkers: entry (i,j) is the probability of pair state {i,j}; with
/// all_localized it is the return probability of a walk started at {i,j},
/// otherwise the arrival probability from the given initial state. The
/// diagonal of every two-walker slice after the first is zero.
PETensor qrw_pe_tensor(const Graph& g, std::size_t walkers, std::span<const double> times,
                       const InitialDistribution& init);

enum class QirwNormalization { per_step, none };
std::string_view to_string(QirwNormalization n);

/// Slices k = 0..K of <ij|(H_2)^k|psi_init>, written to (i,j) and (j,i).
/// all_localized uses psi_init = |ij> for each entry (return amplitudes).
/// per_step rescales the working vector to unit L2 norm after each product
/// (a zero vector stays zero); none raises NumericError on overflow.
PETensor qirw_discrete(const Graph& g, std::size_t K, const InitialDistribution& init,
                       QirwNormalization normalization = QirwNormalization::per_step);

}  // namespace qpe
