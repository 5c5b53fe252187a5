#pragma once

#include "qpe/graph.hpp"
#include "qpe/pe_tensor.hpp"
#include "qpe/subspace_walks.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qpe {

enum class DistanceKind { spd, rrwp, qirw2 };

std::string_view to_string(DistanceKind k);
DistanceKind parse_distance_kind(std::string_view name);

/// Pair distances d(u,v) used by GD-WL. Float-valued providers are rounded
/// to `decimals` places before hashing.
struct DistanceProvider {
  DistanceKind kind = DistanceKind::spd;
  std::size_t steps = 21;  // K for rrwp/qirw2
  InitialDistribution initial = InitialDistribution::of(InitialKind::all_localized);
  QirwNormalization normalization = QirwNormalization::per_step;
  int decimals = 9;

  static DistanceProvider spd() { return {}; }
  static DistanceProvider rrwp(std::size_t K) { return {DistanceKind::rrwp, K}; }
  static DistanceProvider qirw2(std::size_t K) { return {DistanceKind::qirw2, K}; }
};

/// Quantised distance vectors, row-major over ordered pairs (u, v).
struct DistanceTable {
  std::size_t num_nodes = 0;
  std::size_t width = 0;
  std::vector<std::int64_t> values;

  std::span<const std::int64_t> at(std::size_t u, std::size_t v) const {
    return {values.data() + (u * num_nodes + v) * width, width};
  }
};

DistanceTable compute_distances(const Graph& g, const DistanceProvider& provider);

struct ColorPartition {
  std::vector<std::uint32_t> colors;
  std::map<std::uint32_t, std::size_t> histogram;
  std::size_t rounds = 0;

  std::size_t num_classes() const noexcept { return histogram.size(); }
};

/// h_l(u) = id(h_{l-1}(u), {(h_{l-1}(v), d(u,v)) : v in V}), self pair
/// included, iterated until the number of classes stops growing.
ColorPartition gdwl_refine(const Graph& g, const DistanceProvider& provider);

/// Plain 1-WL refinement over neighbour multisets.
ColorPartition wl_refine(const Graph& g);

struct Distinguishability {
  bool distinguishable = false;
  ColorPartition first;
  ColorPartition second;
};

/// Joint refinement on the disjoint union with a shared colour dictionary;
/// cross-graph pairs carry a sentinel distance.
Distinguishability gdwl_distinguish(const Graph& g1, const Graph& g2, const DistanceProvider& provider);

struct SrgParameters {
  std::size_t n = 0, k = 0, lambda = 0, mu = 0;
  friend bool operator==(const SrgParameters&, const SrgParameters&) = default;
};

/// Parameters if g is strongly regular, else nullopt with `why` filled in.
std::optional<SrgParameters> srg_parameters(const Graph& g, std::string* why = nullptr);

struct PowerIdentity {
  std::size_t power = 0;
  double alpha = 0, beta = 0, gamma = 0;  // A^n ~ alpha I + beta J + gamma A
  double residual = 0;                    // max-abs deviation of the fit
};

/// Least-squares fit of A^n onto {I, J, A} for n = 1..max_power, using exact
/// integer powers. Throws DataError if g is not strongly regular.
std::vector<PowerIdentity> srg_power_identity_check(const Graph& g, std::size_t max_power);

/// L2 distance between the sorted flattened values of two tensors.
double encoding_distance(const PETensor& a, const PETensor& b);

}  // namespace qpe
