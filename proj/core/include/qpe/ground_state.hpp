#pragma once

#include "qpe/graph.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace qpe {

inline constexpr std::size_t default_exhaustive_cap = 30;
inline constexpr double default_delta = 0.5;

using Bitstring = std::vector<std::uint8_t>;

/// E(b) = sum_{(i,j) in E} b_i b_j - delta * sum_i b_i  (edge weights ignored).
double ising_energy(std::span<const std::uint8_t> b, const Graph& g, double delta);

/// All global minimisers of E(b). For 0 < delta < 1 these are exactly the
/// maximum independent sets.
struct GroundStateManifold {
  double delta = default_delta;
  double energy = 0.0;
  std::vector<Bitstring> bitstrings;  // descending lexicographic order
};

struct GroundStateOptions {
  std::size_t max_nodes = default_exhaustive_cap;
  std::size_t max_states = std::size_t{1} << 22;
};

/// Branch and bound over independent sets for 0 < delta < 1, plain 2^N
/// enumeration otherwise. Throws CapacityError above options.max_nodes.
GroundStateManifold ground_state_manifold(const Graph& g, double delta,
                                          const GroundStateOptions& options = {});

/// Every maximum independent set, as sorted node lists (no size cap beyond
/// options.max_states).
std::vector<std::vector<NodeId>> maximum_independent_sets(const Graph& g,
                                                          std::size_t max_states = std::size_t{1} << 22);

/// C_ij = <Z_i Z_j> over the uniform superposition of the manifold.
Eigen::MatrixXd gs_correlation_matrix(const GroundStateManifold& m);
Eigen::MatrixXd gs_correlation_matrix(const Graph& g, double delta,
                                      const GroundStateOptions& options = {});

struct GsEigvecPE {
  Eigen::MatrixXd vectors;  // N x d, descending eigenvalue order, sign-fixed
  Eigen::VectorXd values;
  std::vector<std::pair<std::size_t, std::size_t>> degenerate_clusters;
  /// Graph exceeded the exhaustive cap; vectors and values are zero.
  bool above_cap = false;
};

GsEigvecPE gs_eigvec_pe(const Graph& g, double delta, std::size_t d,
                        const GroundStateOptions& options = {});

}  // namespace qpe
