#include "qpe/graph.hpp"

#include "qpe/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace qpe {

using nlohmann::json;

Graph::Graph(std::size_t num_nodes, std::vector<Edge> edges,
             std::optional<std::vector<double>> edge_weights,
             std::optional<Eigen::MatrixXd> node_features)
    : num_nodes_(num_nodes), has_weights_(edge_weights.has_value()) {
  if (num_nodes == 0) throw_data("graph must have at least one node");
  if (num_nodes > std::numeric_limits<NodeId>::max())
    throw_data("num_nodes exceeds the supported node id range");

  if (edge_weights && edge_weights->size() != edges.size()) {
    throw_data("edge_weights has " + std::to_string(edge_weights->size()) +
               " entries but there are " + std::to_string(edges.size()) +
               " edges");
  }

  for (std::size_t k = 0; k < edges.size(); ++k) {
    Edge& e = edges[k];
    if (e.u >= num_nodes || e.v >= num_nodes) {
      throw_data("node index out of range at edge index " + std::to_string(k) +
                 " (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                 "), num_nodes=" + std::to_string(num_nodes));
    }
    if (e.u == e.v) throw_data("self-loop at index " + std::to_string(k));
    if (e.u > e.v) std::swap(e.u, e.v);
    if (edge_weights && !std::isfinite((*edge_weights)[k]))
      throw_data("non-finite edge weight at index " + std::to_string(k));
  }

  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return edges[a] < edges[b];
  });
  edges_.reserve(edges.size());
  weights_.reserve(edges.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    const std::size_t k = order[r];
    if (r > 0 && edges[order[r - 1]] == edges[k]) {
      throw_data("duplicate edge at index " + std::to_string(k) + " (" +
                 std::to_string(edges[k].u) + "," + std::to_string(edges[k].v) +
                 ")");
    }
    edges_.push_back(edges[k]);
    weights_.push_back(edge_weights ? (*edge_weights)[k] : 1.0);
  }

  if (node_features) {
    if (static_cast<std::size_t>(node_features->rows()) != num_nodes)
      throw_data("node_features must have one row per node");
    if (!node_features->allFinite()) throw_data("node_features must be finite");
    features_ = std::move(node_features);
  }

  std::vector<std::size_t> deg(num_nodes, 0);
  for (const Edge& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  offsets_.assign(num_nodes + 1, 0);
  for (std::size_t i = 0; i < num_nodes; ++i) offsets_[i + 1] = offsets_[i] + deg[i];
  adjacency_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const Edge& e = edges_[k];
    adjacency_[fill[e.u]++] = {e.v, weights_[k]};
    adjacency_[fill[e.v]++] = {e.u, weights_[k]};
  }
  for (std::size_t i = 0; i < num_nodes; ++i) {
    std::sort(adjacency_.begin() + offsets_[i], adjacency_.begin() + offsets_[i + 1],
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
}

Graph Graph::from_pairs(std::size_t num_nodes,
                        const std::vector<std::pair<NodeId, NodeId>>& pairs) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (auto [a, b] : pairs) edges.push_back({a, b});
  return Graph(num_nodes, std::move(edges));
}

const Eigen::MatrixXd& Graph::node_features() const {
  if (!features_) throw_data("graph has no node features");
  return *features_;
}

std::span<const Neighbor> Graph::neighbors(NodeId node) const {
  return {adjacency_.data() + offsets_[node], offsets_[node + 1] - offsets_[node]};
}

std::size_t Graph::degree(NodeId node) const {
  return offsets_[node + 1] - offsets_[node];
}

bool Graph::has_edge(NodeId a, NodeId b) const {
  auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), Neighbor{b, 0.0},
                            [](const Neighbor& x, const Neighbor& y) {
                              return x.node < y.node;
                            });
}

double Graph::weight(NodeId a, NodeId b) const {
  auto nb = neighbors(a);
  auto it = std::lower_bound(nb.begin(), nb.end(), b,
                             [](const Neighbor& x, NodeId id) { return x.node < id; });
  return (it != nb.end() && it->node == b) ? it->weight : 0.0;
}

Eigen::MatrixXd Graph::adjacency() const {
  const auto n = static_cast<Eigen::Index>(num_nodes_);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : edges_) a(e.u, e.v) = a(e.v, e.u) = 1.0;
  return a;
}

Eigen::MatrixXd Graph::weighted_adjacency() const {
  const auto n = static_cast<Eigen::Index>(num_nodes_);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t k = 0; k < edges_.size(); ++k)
    a(edges_[k].u, edges_[k].v) = a(edges_[k].v, edges_[k].u) = weights_[k];
  return a;
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.num_nodes_ != b.num_nodes_ || a.edges_ != b.edges_ ||
      a.has_weights_ != b.has_weights_ || a.weights_ != b.weights_ ||
      a.features_.has_value() != b.features_.has_value())
    return false;
  return !a.features_ || *a.features_ == *b.features_;
}

// ---- JSON ------------------------------------------------------------------

namespace {

NodeId parse_node_index(const json& v, std::size_t edge_index) {
  if (!v.is_number_integer())
    throw_data("edges[" + std::to_string(edge_index) + "]: node index must be an integer");
  const auto value = v.get<std::int64_t>();
  if (value < 0 || value > std::numeric_limits<NodeId>::max())
    throw_data("node index out of range at edge index " + std::to_string(edge_index));
  return static_cast<NodeId>(value);
}

}  // namespace

Graph load_graph(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end(), nullptr, true,
                      /*ignore_comments=*/false);
  } catch (const json::parse_error& e) {
    throw_data(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw_data("graph document must be a JSON object");

  const auto nn = doc.find("num_nodes");
  if (nn == doc.end() || !nn->is_number_integer() || nn->get<std::int64_t>() <= 0)
    throw_data("\"num_nodes\" must be a positive integer");
  const auto num_nodes = static_cast<std::size_t>(nn->get<std::int64_t>());

  std::vector<Edge> edges;
  if (auto it = doc.find("edges"); it != doc.end()) {
    if (!it->is_array()) throw_data("\"edges\" must be an array");
    edges.reserve(it->size());
    for (std::size_t k = 0; k < it->size(); ++k) {
      const json& e = (*it)[k];
      if (!e.is_array() || e.size() != 2)
        throw_data("edges[" + std::to_string(k) + "]: expected a pair [u, v]");
      edges.push_back({parse_node_index(e[0], k), parse_node_index(e[1], k)});
    }
  }

  std::optional<std::vector<double>> weights;
  if (auto it = doc.find("edge_weights"); it != doc.end() && !it->is_null()) {
    if (!it->is_array()) throw_data("\"edge_weights\" must be an array");
    weights.emplace();
    for (std::size_t k = 0; k < it->size(); ++k) {
      if (!(*it)[k].is_number())
        throw_data("edge_weights[" + std::to_string(k) + "] must be a number");
      weights->push_back((*it)[k].get<double>());
    }
  }

  std::optional<Eigen::MatrixXd> features;
  if (auto it = doc.find("node_features"); it != doc.end() && !it->is_null()) {
    if (!it->is_array() || it->size() != num_nodes)
      throw_data("\"node_features\" must be an array with one row per node");
    const std::size_t width = num_nodes == 0 || !(*it)[0].is_array() ? 0 : (*it)[0].size();
    features.emplace(static_cast<Eigen::Index>(num_nodes), static_cast<Eigen::Index>(width));
    for (std::size_t i = 0; i < num_nodes; ++i) {
      const json& row = (*it)[i];
      if (!row.is_array() || row.size() != width)
        throw_data("node_features[" + std::to_string(i) + "] has inconsistent width");
      for (std::size_t f = 0; f < width; ++f) {
        if (!row[f].is_number())
          throw_data("node_features[" + std::to_string(i) + "][" + std::to_string(f) +
                     "] must be a number");
        (*features)(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(f)) =
            row[f].get<double>();
      }
    }
  }

  return Graph(num_nodes, std::move(edges), std::move(weights), std::move(features));
}

Graph load_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_data("cannot open graph file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return load_graph(buf.str());
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::string to_json_text(const Graph& g, int indent) {
  json doc;
  doc["num_nodes"] = g.num_nodes();
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  doc["edges"] = std::move(edges);
  if (g.has_edge_weights()) doc["edge_weights"] = g.edge_weights();
  if (g.has_node_features()) {
    const auto& f = g.node_features();
    json rows = json::array();
    for (Eigen::Index i = 0; i < f.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index c = 0; c < f.cols(); ++c) row.push_back(f(i, c));
      rows.push_back(std::move(row));
    }
    doc["node_features"] = std::move(rows);
  }
  return doc.dump(indent);
}

void save_graph_file(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_data("cannot write graph file " + path.string());
  out << to_json_text(g) << '\n';
}

// ---- permutations -------------------------------------------------------------

namespace {

void check_bijection(std::span<const NodeId> pi, std::size_t n) {
  if (pi.size() != n)
    throw_data("permutation has " + std::to_string(pi.size()) + " entries, expected " +
               std::to_string(n));
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (pi[i] >= n || seen[pi[i]])
      throw_data("permutation is not a bijection (entry " + std::to_string(i) + ")");
    seen[pi[i]] = true;
  }
}

}  // namespace

Graph permute(const Graph& g, std::span<const NodeId> pi) {
  check_bijection(pi, g.num_nodes());
  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (const Edge& e : g.edges()) edges.push_back({pi[e.u], pi[e.v]});
  std::optional<std::vector<double>> weights;
  if (g.has_edge_weights()) weights = g.edge_weights();
  std::optional<Eigen::MatrixXd> features;
  if (g.has_node_features()) {
    const auto& f = g.node_features();
    features.emplace(f.rows(), f.cols());
    for (Eigen::Index i = 0; i < f.rows(); ++i) features->row(pi[i]) = f.row(i);
  }
  return Graph(g.num_nodes(), std::move(edges), std::move(weights), std::move(features));
}

std::vector<NodeId> inverse_permutation(std::span<const NodeId> pi) {
  check_bijection(pi, pi.size());
  std::vector<NodeId> inv(pi.size());
  for (std::size_t i = 0; i < pi.size(); ++i) inv[pi[i]] = static_cast<NodeId>(i);
  return inv;
}

Eigen::MatrixXd permutation_matrix(std::span<const NodeId> pi) {
  check_bijection(pi, pi.size());
  const auto n = static_cast<Eigen::Index>(pi.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) p(pi[i], i) = 1.0;
  return p;
}

// ---- matrices -------------------------------------------------------------------

TransitionMatrix random_walk_matrix(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  TransitionMatrix out;
  out.matrix = Eigen::MatrixXd::Zero(n, n);
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    const auto nb = g.neighbors(i);
    if (nb.empty()) {
      out.isolated_nodes.push_back(i);
      out.warnings.push_back("isolated node " + std::to_string(i) +
                             ": random-walk row set to zero");
      continue;
    }
    const double p = 1.0 / static_cast<double>(nb.size());
    for (const Neighbor& x : nb) out.matrix(i, x.node) = p;
  }
  return out;
}

std::string_view to_string(LaplacianMode mode) {
  return mode == LaplacianMode::combinatorial ? "combinatorial" : "sym_normalized";
}

LaplacianMode parse_laplacian_mode(std::string_view name) {
  if (name == "combinatorial") return LaplacianMode::combinatorial;
  if (name == "sym_normalized" || name == "sym" || name == "normalized")
    return LaplacianMode::sym_normalized;
  throw_data("unknown Laplacian mode '" + std::string(name) + "'");
}

Eigen::MatrixXd laplacian(const Graph& g, LaplacianMode mode) {
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  if (mode == LaplacianMode::combinatorial) {
    for (const Edge& e : g.edges()) {
      lap(e.u, e.v) = lap(e.v, e.u) = -1.0;
      lap(e.u, e.u) += 1.0;
      lap(e.v, e.v) += 1.0;
    }
    return lap;
  }
  for (NodeId i = 0; i < g.num_nodes(); ++i)
    if (g.degree(i) > 0) lap(i, i) = 1.0;
  for (const Edge& e : g.edges()) {
    const double s = 1.0 / std::sqrt(static_cast<double>(g.degree(e.u)) *
                                     static_cast<double>(g.degree(e.v)));
    lap(e.u, e.v) = lap(e.v, e.u) = -s;
  }
  return lap;
}

}  // namespace qpe
