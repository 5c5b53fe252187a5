#include "qpe/srg_fixtures.hpp"

#include <algorithm>

namespace qpe {

Graph rook_4x4_graph() {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId u = 0; u < 16; ++u)
    for (NodeId v = u + 1; v < 16; ++v)
      if (u / 4 == v / 4 || u % 4 == v % 4) pairs.emplace_back(u, v);
  return Graph::from_pairs(16, pairs);
}

Graph shrikhande_graph() {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  auto connected = [](NodeId u, NodeId v) {
    const NodeId da = (v / 4 + 4 - u / 4) % 4, db = (v % 4 + 4 - u % 4) % 4;
    return (da == 0 && (db == 1 || db == 3)) || (db == 0 && (da == 1 || da == 3)) ||
           (da == 1 && db == 1) || (da == 3 && db == 3);
  };
  for (NodeId u = 0; u < 16; ++u)
    for (NodeId v = u + 1; v < 16; ++v)
      if (connected(u, v)) pairs.emplace_back(u, v);
  return Graph::from_pairs(16, pairs);
}

std::vector<std::size_t> neighbourhood_component_profile(const Graph& g) {
  std::vector<std::size_t> profile;
  std::vector<int> label(g.num_nodes(), -1);
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const auto nb = g.neighbors(v);
    for (const Neighbor& x : nb) label[x.node] = 0;
    std::size_t components = 0;
    std::vector<NodeId> stack;
    for (const Neighbor& x : nb) {
      if (label[x.node] != 0) continue;
      ++components;
      label[x.node] = 1;
      stack.push_back(x.node);
      while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        for (const Neighbor& y : g.neighbors(u))
          if (label[y.node] == 0) {
            label[y.node] = 1;
            stack.push_back(y.node);
          }
      }
    }
    for (const Neighbor& x : nb) label[x.node] = -1;
    profile.push_back(components);
  }
  std::sort(profile.begin(), profile.end());
  return profile;
}

NonIsomorphismCertificate certify_non_isomorphic(const Graph& a, const Graph& b) {
  NonIsomorphismCertificate c;
  c.invariant = "components of induced neighbourhoods";
  c.first = neighbourhood_component_profile(a);
  c.second = neighbourhood_component_profile(b);
  c.certified = a.num_nodes() != b.num_nodes() || a.num_edges() != b.num_edges() || c.first != c.second;
  return c;
}

}  // namespace qpe
