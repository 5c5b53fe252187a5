#include "qpe/gdwl.hpp"

#include "qpe/classical_pe.hpp"
#include "qpe/error.hpp"

#include <algorithm>
#include <cmath>

namespace qpe {

std::string_view to_string(DistanceKind k) {
  switch (k) {
    case DistanceKind::spd: return "spd";
    case DistanceKind::rrwp: return "rrwp";
    case DistanceKind::qirw2: return "qirw2";
  }
  return "?";
}

DistanceKind parse_distance_kind(std::string_view name) {
  for (auto k : {DistanceKind::spd, DistanceKind::rrwp, DistanceKind::qirw2})
    if (name == to_string(k)) return k;
  throw_data("unknown distance provider '" + std::string(name) + "'");
}

namespace {

std::int64_t quantize(double x, double scale) {
  const double v = std::round(x * scale);
  if (!std::isfinite(v) || std::abs(v) > 9.0e18)
    throw_numeric("distance value " + std::to_string(x) + " cannot be quantised");
  return static_cast<std::int64_t>(v);
}

DistanceTable from_tensor(const PETensor& t, int decimals) {
  const double scale = std::pow(10.0, decimals);
  DistanceTable d{t.num_nodes(), t.num_slices(), {}};
  d.values.reserve(t.values().size());
  for (double x : t.values()) d.values.push_back(quantize(x, scale));
  return d;
}

}  // namespace

DistanceTable compute_distances(const Graph& g, const DistanceProvider& p) {
  switch (p.kind) {
    case DistanceKind::spd: {
      const Eigen::MatrixXi s = spd_matrix(g);
      const std::size_t n = g.num_nodes();
      DistanceTable d{n, 1, std::vector<std::int64_t>(n * n)};
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
          d.values[u * n + v] = s(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v));
      return d;
    }
    case DistanceKind::rrwp:
      return from_tensor(rrwp(g, p.steps), p.decimals);
    case DistanceKind::qirw2:
      return from_tensor(qirw_discrete(g, p.steps, p.initial, p.normalization), p.decimals);
  }
  throw_data("unknown distance provider");
}

namespace {

using Signature = std::vector<std::uint64_t>;

constexpr std::uint32_t cross_graph_distance = 0;

/// Refines the disjoint union of the given graphs.
std::vector<ColorPartition> refine_joint(const std::vector<DistanceTable>& tables) {
  // Distance vectors to dictionary ids; id 0 is reserved for cross-graph pairs.
  // Ids follow sorted key order so they do not depend on node labels.
  std::map<std::vector<std::int64_t>, std::uint32_t> dist_ids;
  for (const auto& t : tables)
    for (std::size_t u = 0; u < t.num_nodes; ++u)
      for (std::size_t v = 0; v < t.num_nodes; ++v) {
        auto span = t.at(u, v);
        dist_ids.emplace(std::vector<std::int64_t>(span.begin(), span.end()), 0);
      }
  std::uint32_t next_id = 1;
  for (auto& [key, id] : dist_ids) id = next_id++;
  std::vector<std::vector<std::uint32_t>> did(tables.size());
  std::size_t total = 0;
  for (std::size_t gi = 0; gi < tables.size(); ++gi) {
    const auto& t = tables[gi];
    did[gi].resize(t.num_nodes * t.num_nodes);
    for (std::size_t u = 0; u < t.num_nodes; ++u)
      for (std::size_t v = 0; v < t.num_nodes; ++v) {
        auto span = t.at(u, v);
        did[gi][u * t.num_nodes + v] = dist_ids.at(std::vector<std::int64_t>(span.begin(), span.end()));
      }
    total += t.num_nodes;
  }

  std::vector<std::size_t> offset(tables.size() + 1, 0);
  for (std::size_t gi = 0; gi < tables.size(); ++gi) offset[gi + 1] = offset[gi] + tables[gi].num_nodes;
  auto graph_of = [&](std::size_t x) {
    return static_cast<std::size_t>(std::upper_bound(offset.begin(), offset.end(), x) - offset.begin() - 1);
  };

  std::vector<std::uint32_t> colors(total, 0);
  std::size_t classes = total > 0 ? 1 : 0;
  std::size_t rounds = 0;
  while (rounds < std::max<std::size_t>(total, 1)) {
    ++rounds;
    std::map<Signature, std::uint32_t> dict;
    std::vector<Signature> sigs(total);
    for (std::size_t x = 0; x < total; ++x) {
      const std::size_t gx = graph_of(x);
      const std::size_t nx = tables[gx].num_nodes;
      Signature& s = sigs[x];
      s.reserve(total + 1);
      for (std::size_t y = 0; y < total; ++y) {
        const std::size_t gy = graph_of(y);
        const std::uint32_t d = gx == gy ? did[gx][(x - offset[gx]) * nx + (y - offset[gy])] : cross_graph_distance;
        s.push_back((std::uint64_t{colors[y]} << 32) | d);
      }
      std::sort(s.begin(), s.end());
      s.insert(s.begin(), colors[x]);
    }
    // Ids follow sorted signature order, so they do not depend on node labels.
    for (const auto& s : sigs) dict.emplace(s, 0);
    std::uint32_t next = 0;
    for (auto& [sig, id] : dict) id = next++;
    std::vector<std::uint32_t> refined(total);
    for (std::size_t x = 0; x < total; ++x) refined[x] = dict.at(sigs[x]);
    colors = std::move(refined);
    const std::size_t now = dict.size();
    if (now == classes) break;
    classes = now;
  }

  std::vector<ColorPartition> out(tables.size());
  for (std::size_t gi = 0; gi < tables.size(); ++gi) {
    auto& part = out[gi];
    part.rounds = rounds;
    part.colors.assign(colors.begin() + static_cast<std::ptrdiff_t>(offset[gi]),
                       colors.begin() + static_cast<std::ptrdiff_t>(offset[gi + 1]));
    for (auto c : part.colors) ++part.histogram[c];
  }
  return out;
}

}  // namespace

ColorPartition gdwl_refine(const Graph& g, const DistanceProvider& provider) {
  return refine_joint({compute_distances(g, provider)}).front();
}

Distinguishability gdwl_distinguish(const Graph& g1, const Graph& g2, const DistanceProvider& provider) {
  auto parts = refine_joint({compute_distances(g1, provider), compute_distances(g2, provider)});
  Distinguishability out;
  out.first = std::move(parts[0]);
  out.second = std::move(parts[1]);
  out.distinguishable = out.first.histogram != out.second.histogram;
  return out;
}

ColorPartition wl_refine(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::uint32_t> colors(n, 0);
  std::size_t classes = n > 0 ? 1 : 0, rounds = 0;
  while (rounds < std::max<std::size_t>(n, 1)) {
    ++rounds;
    std::vector<Signature> sigs(n);
    std::map<Signature, std::uint32_t> dict;
    for (NodeId u = 0; u < n; ++u) {
      for (const Neighbor& v : g.neighbors(u)) sigs[u].push_back(colors[v.node]);
      std::sort(sigs[u].begin(), sigs[u].end());
      sigs[u].insert(sigs[u].begin(), colors[u]);
      dict.emplace(sigs[u], 0);
    }
    std::uint32_t next = 0;
    for (auto& [sig, id] : dict) id = next++;
    for (NodeId u = 0; u < n; ++u) colors[u] = dict.at(sigs[u]);
    if (dict.size() == classes) break;
    classes = dict.size();
  }
  ColorPartition out{colors, {}, rounds};
  for (auto c : colors) ++out.histogram[c];
  return out;
}

std::optional<SrgParameters> srg_parameters(const Graph& g, std::string* why) {
  auto fail = [&](std::string msg) -> std::optional<SrgParameters> {
    if (why) *why = "not strongly regular: " + std::move(msg);
    return std::nullopt;
  };
  const std::size_t n = g.num_nodes();
  const std::size_t k = g.degree(0);
  for (NodeId v = 1; v < n; ++v)
    if (g.degree(v) != k)
      return fail("degree not constant (node 0 has " + std::to_string(k) + ", node " +
                  std::to_string(v) + " has " + std::to_string(g.degree(v)) + ")");
  if (k == 0 || k + 1 == n) return fail("empty or complete graph");

  const Eigen::MatrixXi a = g.adjacency().cast<int>();
  const Eigen::MatrixXi common = a * a;
  std::optional<std::size_t> lambda, mu;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) {
      const auto c = static_cast<std::size_t>(common(u, v));
      auto& slot = a(u, v) ? lambda : mu;
      if (!slot) slot = c;
      if (*slot != c)
        return fail(std::string(a(u, v) ? "lambda" : "mu") + " not constant (pair " +
                    std::to_string(u) + "," + std::to_string(v) + " shares " + std::to_string(c) +
                    " neighbours, expected " + std::to_string(*slot) + ")");
    }
  return SrgParameters{n, k, *lambda, *mu};
}

std::vector<PowerIdentity> srg_power_identity_check(const Graph& g, std::size_t max_power) {
  std::string why;
  if (!srg_parameters(g, &why)) throw_data(why);
  if (max_power == 0) throw_data("max_power must be >= 1");
  using IMat = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  IMat a = g.adjacency().cast<std::int64_t>();
  IMat power = a;
  std::vector<PowerIdentity> out;
  for (std::size_t p = 1; p <= max_power; ++p) {
    if (p > 1) {
      IMat next(n, n);
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
          std::int64_t s = 0;
          for (Eigen::Index l = 0; l < n; ++l) {
            if (!a(l, j)) continue;
            if (__builtin_add_overflow(s, power(i, l), &s))
              throw_numeric("A^" + std::to_string(p) + " overflows 64-bit integers");
          }
          next(i, j) = s;
        }
      power = std::move(next);
    }
    // The fit decouples over diagonal, adjacent and non-adjacent entries.
    double sum[3] = {0, 0, 0};
    std::size_t cnt[3] = {0, 0, 0};
    auto cls = [&](Eigen::Index i, Eigen::Index j) { return i == j ? 0 : (a(i, j) ? 1 : 2); };
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        sum[cls(i, j)] += static_cast<double>(power(i, j));
        ++cnt[cls(i, j)];
      }
    const double mean[3] = {sum[0] / cnt[0], sum[1] / cnt[1], sum[2] / cnt[2]};
    double residual = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        residual = std::max(residual, std::abs(static_cast<double>(power(i, j)) - mean[cls(i, j)]));
    PowerIdentity id;
    id.power = p;
    id.beta = mean[2];
    id.alpha = mean[0] - mean[2];
    id.gamma = mean[1] - mean[2];
    id.residual = residual;
    out.push_back(id);
  }
  return out;
}

double encoding_distance(const PETensor& a, const PETensor& b) {
  if (a.num_nodes() != b.num_nodes() || a.num_slices() != b.num_slices())
    throw_data("encoding_distance: shape mismatch (" + std::to_string(a.num_nodes()) + "x" +
               std::to_string(a.num_slices()) + " vs " + std::to_string(b.num_nodes()) + "x" +
               std::to_string(b.num_slices()) + ")");
  std::vector<double> x = a.values(), y = b.values();
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
  return std::sqrt(s);
}

}  // namespace qpe
