#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qpe {

using NodeId = std::uint32_t;

/// Undirected edge stored canonically with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// One entry of a node's adjacency list.
struct Neighbor {
  NodeId node = 0;
  double weight = 1.0;
};

/// Simple undirected graph with optional edge weights J_ij and node features.
///
/// Construction validates the input (no self-loops, no duplicates, indices in
/// range, weights parallel to edges) and canonicalises the edge list: every
/// edge is stored as (min, max) and the list is sorted lexicographically, with
/// weights permuted alongside. All downstream iteration orders derive from this
/// canonical order. Instances are immutable.
class Graph {
 public:
  Graph(std::size_t num_nodes, std::vector<Edge> edges,
        std::optional<std::vector<double>> edge_weights = std::nullopt,
        std::optional<Eigen::MatrixXd> node_features = std::nullopt);

  /// Builds a graph from (u,v) pairs in any orientation.
  static Graph from_pairs(std::size_t num_nodes,
                          const std::vector<std::pair<NodeId, NodeId>>& pairs);

  std::size_t num_nodes() const noexcept { return num_nodes_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  bool has_edge_weights() const noexcept { return has_weights_; }
  /// Parallel to edges(); all 1.0 when the graph is unweighted.
  const std::vector<double>& edge_weights() const noexcept { return weights_; }

  bool has_node_features() const noexcept { return features_.has_value(); }
  const Eigen::MatrixXd& node_features() const;

  std::span<const Neighbor> neighbors(NodeId node) const;
  std::size_t degree(NodeId node) const;
  bool has_edge(NodeId a, NodeId b) const;
  /// J_ab for an edge, 0 for a non-edge.
  double weight(NodeId a, NodeId b) const;

  /// Unweighted 0/1 adjacency matrix A.
  Eigen::MatrixXd adjacency() const;
  /// Weighted adjacency (J_ij on edges).
  Eigen::MatrixXd weighted_adjacency() const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  std::size_t num_nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<double> weights_;
  bool has_weights_ = false;
  std::optional<Eigen::MatrixXd> features_;
  // CSR adjacency, rows sorted by neighbour id.
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
};

/// Parses a graph from the JSON document schema
/// {"num_nodes": int, "edges": [[int,int],...], "edge_weights": [...],
///  "node_features": [[...],...]}.
Graph load_graph(std::string_view json_text);
Graph load_graph_file(const std::filesystem::path& path);

/// Serialises to the same schema. Output is deterministic.
std::string to_json_text(const Graph& g, int indent = -1);
void save_graph_file(const Graph& g, const std::filesystem::path& path);

/// Relabels nodes: node i of `g` becomes node pi[i].
Graph permute(const Graph& g, std::span<const NodeId> pi);

/// Inverse of a permutation given as image list.
std::vector<NodeId> inverse_permutation(std::span<const NodeId> pi);

/// Permutation matrix P with P(pi[i], i) = 1, so that P * M * P^T relabels M.
Eigen::MatrixXd permutation_matrix(std::span<const NodeId> pi);

struct TransitionMatrix {
  Eigen::MatrixXd matrix;
  std::vector<NodeId> isolated_nodes;
  std::vector<std::string> warnings;
};

/// M = D^{-1} A over the unweighted adjacency. Isolated nodes get an all-zero
/// row and a warning.
TransitionMatrix random_walk_matrix(const Graph& g);

enum class LaplacianMode { combinatorial, sym_normalized };

std::string_view to_string(LaplacianMode mode);
LaplacianMode parse_laplacian_mode(std::string_view name);

/// D - A, or I - D^{-1/2} A D^{-1/2} (isolated nodes keep an all-zero row).
Eigen::MatrixXd laplacian(const Graph& g, LaplacianMode mode);

}  // namespace qpe
