#pragma once

#include "qpe/graph.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace qpe {

/// K4 x K4 rook's graph, SRG(16,6,2,2). Node 4r+c is square (r,c).
Graph rook_4x4_graph();

/// Shrikhande graph, SRG(16,6,2,2): Cayley graph on Z4 x Z4 with
/// connection set {+-(0,1), +-(1,0), +-(1,1)}. Node 4a+b is (a,b).
Graph shrikhande_graph();

inline constexpr const char* rook_fixture_name = "srg16_rook4x4.json";
inline constexpr const char* shrikhande_fixture_name = "srg16_shrikhande.json";

/// Sorted per-vertex component counts of the induced neighbourhood
/// subgraphs. An isomorphism invariant.
std::vector<std::size_t> neighbourhood_component_profile(const Graph& g);

struct NonIsomorphismCertificate {
  bool certified = false;
  std::string invariant;
  std::vector<std::size_t> first, second;
};

/// Certifies non-isomorphism when the neighbourhood profiles differ.
NonIsomorphismCertificate certify_non_isomorphic(const Graph& a, const Graph& b);

}  // namespace qpe
