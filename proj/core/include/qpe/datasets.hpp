#pragma once

#include "qpe/graph.hpp"
#include "qpe/ground_state.hpp"
#include "qpe/random.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qpe {

struct Splits {
  std::vector<std::size_t> train, val, test;
};

struct LabeledDataset {
  std::string name;
  std::vector<Graph> graphs;
  std::vector<int> labels;
  Splits splits;
  std::uint64_t seed = 0;
  /// Generator options plus one structural record per graph.
  nlohmann::json metadata = nlohmann::json::object();
};

/// Per-class shuffles split round(0.8 n) / round(0.1 n) / rest.
Splits stratified_split(std::span<const int> labels, std::uint64_t seed, double train = 0.8,
                        double val = 0.1);

/// graph_XXXXX.json, labels.csv (index,label), splits.json, metadata.json.
void save_dataset(const LabeledDataset& ds, const std::filesystem::path& dir);
LabeledDataset load_dataset(const std::filesystem::path& dir);

// ---- ladders ---------------------------------------------------------------

/// Ladder with rungs (a_i, b_i), rails a_i-a_{i+1} and b_i-b_{i+1}, and a
/// crossing diagonal a_i-b_{i+1} on every listed square i. Node a_i is 2i,
/// b_i is 2i+1.
struct LadderLayout {
  std::size_t rungs = 0;
  std::vector<std::size_t> diagonals;
};

Graph ladder_graph(const LadderLayout& layout);

/// Joins ladders end to end with the two rail-continuation edges.
LadderLayout concatenate(std::span<const LadderLayout> blocks);

struct LadderGroundStates {
  std::size_t mis_size = 0;
  std::uint64_t count = 0;
};

/// Maximum independent set size and multiplicity by transfer matrix.
LadderGroundStates ladder_ground_states(const LadderLayout& layout);

/// Type 0: plain ladder of `length` rungs. Type 1: `length` rungs with up to
/// `crossings` diagonals on distinct even squares. Type 2: `length` - 2 rungs
/// with diagonals on the first and last squares.
LadderLayout cladder_block(int type, std::size_t length, std::size_t crossings, Rng& rng);

struct CladderOptions {
  std::size_t min_length = 10, max_length = 52;
  std::size_t min_crossings = 2, max_crossings = 9;
  std::size_t max_redraws = 10000;

  /// Lengths and crossing counts scaled by s (s = 1 gives the defaults).
  static CladderOptions scaled(double s);
};

inline constexpr int cladder_sequence[7] = {1, 2, 1, 2, 0, 2, 1};
/// Block-length parities per class; 0 = even, 1 = odd.
inline constexpr int cladder_parity[2][7] = {{0, 1, 0, 1, 0, 0, 1}, {1, 1, 1, 1, 0, 0, 1}};

LabeledDataset gen_cladder(std::size_t n_per_class, std::uint64_t seed, const CladderOptions& options = {});

// ---- S-PATTERN -------------------------------------------------------------

/// Eight-node union of triangles with three attachment ports.
Graph spattern_base_graph();
inline constexpr NodeId spattern_anchor_port = 7;
inline constexpr NodeId spattern_opposite_port = 5;  // class 0
inline constexpr NodeId spattern_adjacent_port = 4;  // class 1

/// Chain of `cells` unit squares where each new cell touches only its
/// predecessor. Returns nullopt when the random growth gets stuck.
std::optional<Graph> snake_polyomino(std::size_t cells, Rng& rng);

/// Exactly two ground states that are complements of each other.
bool has_two_complementary_ground_states(const Graph& g, double delta = default_delta,
                                         const GroundStateOptions& options = {});

struct SpatternOptions {
  std::size_t min_cells = 100, max_cells = 120;
  std::size_t max_redraws = 10000;
  /// Strongly correlated blocks up to this size get the exhaustive check.
  std::size_t validation_max_nodes = 256;

  static SpatternOptions scaled(double s);
};

LabeledDataset gen_spattern(std::size_t n_per_class, std::uint64_t seed, const SpatternOptions& options = {});

// ---- randomisation ---------------------------------------------------------

struct RandomizeResult {
  Graph graph;
  std::size_t swaps = 0;
  std::vector<std::string> warnings;
};

inline std::size_t default_swap_count(const Graph& g) { return 10 * g.num_edges(); }

/// Double edge swaps (a,b),(c,d) -> (a,d),(c,b); each edge keeps its weight.
/// Swaps creating self-loops or duplicates are rejected and redrawn.
RandomizeResult config_model_randomize(const Graph& g, std::size_t n_swaps, std::uint64_t seed);

/// Uniform member of G(n, m) with the node and edge counts of g. Edge
/// weights are dropped; node features are kept.
Graph gnm_randomize(const Graph& g, std::uint64_t seed);

/// Shuffles the entries of every node's feature vector independently.
Graph permute_features(const Graph& g, std::uint64_t seed);

/// Uniformly random relabelling permutation.
std::vector<NodeId> random_permutation(std::size_t n, Rng& rng);

}  // namespace qpe
