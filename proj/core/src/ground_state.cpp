#include "qpe/ground_state.hpp"

#include "qpe/error.hpp"
#include "qpe/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>

namespace qpe {

double ising_energy(std::span<const std::uint8_t> b, const Graph& g, double delta) {
  if (b.size() != g.num_nodes())
    throw_data("bitstring length " + std::to_string(b.size()) + " does not match N=" +
               std::to_string(g.num_nodes()));
  double e = 0.0;
  for (const Edge& edge : g.edges())
    if (b[edge.u] && b[edge.v]) e += 1.0;
  int ones = 0;
  for (auto x : b) ones += x ? 1 : 0;
  return e - delta * ones;
}

namespace {

class Bitset {
 public:
  explicit Bitset(std::size_t n) : words_((n + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }
  bool any() const {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  std::size_t count_and(const Bitset& o) const {
    std::size_t c = 0;
    for (std::size_t k = 0; k < words_.size(); ++k)
      c += static_cast<std::size_t>(std::popcount(words_[k] & o.words_[k]));
    return c;
  }
  /// Lowest set index, or npos.
  std::size_t first() const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k]) return k * 64 + static_cast<std::size_t>(std::countr_zero(words_[k]));
    return npos;
  }
  std::size_t next(std::size_t i) const {
    ++i;
    std::size_t k = i / 64;
    if (k >= words_.size()) return npos;
    std::uint64_t w = words_[k] & (~std::uint64_t{0} << (i % 64));
    while (true) {
      if (w) return k * 64 + static_cast<std::size_t>(std::countr_zero(w));
      if (++k >= words_.size()) return npos;
      w = words_[k];
    }
  }
  Bitset& operator&=(const Bitset& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  void subtract(const Bitset& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
  }

  static constexpr std::size_t npos = ~std::size_t{0};

 private:
  std::vector<std::uint64_t> words_;
};

class MisEnumerator {
 public:
  MisEnumerator(const Graph& g, std::size_t max_states)
      : n_(g.num_nodes()), max_states_(max_states), adj_(n_, Bitset(n_)) {
    for (const Edge& e : g.edges()) {
      adj_[e.u].set(e.v);
      adj_[e.v].set(e.u);
    }
  }

  std::vector<std::vector<NodeId>> run() {
    Bitset cand(n_);
    for (std::size_t i = 0; i < n_; ++i) cand.set(i);
    std::vector<NodeId> cur;
    recurse(cur, cand);
    for (auto& s : found_) std::sort(s.begin(), s.end());
    std::sort(found_.begin(), found_.end());
    return std::move(found_);
  }

 private:
  // Greedy clique cover of `cand`: an upper bound on its independence number.
  std::size_t cover_bound(Bitset c) const {
    std::size_t cliques = 0;
    for (std::size_t v = c.first(); v != Bitset::npos; v = c.first()) {
      c.reset(v);
      Bitset common = adj_[v];
      common &= c;
      for (std::size_t u = common.first(); u != Bitset::npos; u = common.first()) {
        c.reset(u);
        common.reset(u);
        common &= adj_[u];
      }
      ++cliques;
    }
    return cliques;
  }

  void recurse(std::vector<NodeId>& cur, Bitset cand) {
    // Vertices with no neighbour among the candidates always belong to a maximum set.
    std::size_t pushed = 0;
    std::size_t pick = Bitset::npos, pick_deg = 0;
    for (std::size_t v = cand.first(); v != Bitset::npos; v = cand.next(v)) {
      const std::size_t d = adj_[v].count_and(cand);
      if (d == 0) {
        cur.push_back(static_cast<NodeId>(v));
        ++pushed;
        cand.reset(v);
      } else if (pick == Bitset::npos || d > pick_deg) {
        pick = v;
        pick_deg = d;
      }
    }
    if (pick == Bitset::npos) {
      record(cur);
    } else if (cur.size() + cover_bound(cand) >= best_) {
      Bitset with = cand;
      with.subtract(adj_[pick]);
      with.reset(pick);
      cur.push_back(static_cast<NodeId>(pick));
      recurse(cur, with);
      cur.pop_back();
      cand.reset(pick);
      recurse(cur, cand);
    }
    cur.resize(cur.size() - pushed);
  }

  void record(const std::vector<NodeId>& cur) {
    if (cur.size() > best_ || found_.empty()) {
      best_ = cur.size();
      found_.clear();
    }
    if (cur.size() == best_) {
      if (found_.size() >= max_states_)
        throw CapacityError("more than " + std::to_string(max_states_) + " maximum independent sets");
      found_.push_back(cur);
    }
  }

  std::size_t n_;
  std::size_t max_states_;
  std::vector<Bitset> adj_;
  std::size_t best_ = 0;
  std::vector<std::vector<NodeId>> found_;
};

Bitstring to_bits(std::size_t n, const std::vector<NodeId>& set) {
  Bitstring b(n, 0);
  for (NodeId v : set) b[v] = 1;
  return b;
}

}  // namespace

std::vector<std::vector<NodeId>> maximum_independent_sets(const Graph& g, std::size_t max_states) {
  return MisEnumerator(g, max_states).run();
}

GroundStateManifold ground_state_manifold(const Graph& g, double delta,
                                          const GroundStateOptions& options) {
  if (!std::isfinite(delta)) throw_data("delta must be finite");
  const std::size_t n = g.num_nodes();
  if (n > options.max_nodes)
    throw CapacityError("ground-state enumeration needs N <= " + std::to_string(options.max_nodes) +
                        ", got N=" + std::to_string(n));
  GroundStateManifold out;
  out.delta = delta;

  if (delta > 0.0 && delta < 1.0) {
    for (const auto& s : maximum_independent_sets(g, options.max_states))
      out.bitstrings.push_back(to_bits(n, s));
    out.energy = ising_energy(out.bitstrings.front(), g, delta);
    for (const auto& b : out.bitstrings)
      for (const Edge& e : g.edges())
        if (b[e.u] && b[e.v]) throw_numeric("internal error: ground state is not independent");
    std::sort(out.bitstrings.begin(), out.bitstrings.end(), std::greater<>());
    return out;
  }

  if (n > 62) throw CapacityError("brute-force enumeration limited to 62 nodes");
  double best = INFINITY;
  std::vector<std::uint64_t> minimisers;
  Bitstring b(n, 0);
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    for (std::size_t i = 0; i < n; ++i) b[i] = (x >> i) & 1;
    const double e = ising_energy(b, g, delta);
    if (e < best - 1e-12) {
      best = e;
      minimisers.clear();
    }
    if (std::abs(e - best) <= 1e-12) {
      if (minimisers.size() >= options.max_states)
        throw CapacityError("ground-state manifold exceeds " + std::to_string(options.max_states) + " states");
      minimisers.push_back(x);
    }
  }
  out.energy = best;
  for (auto x : minimisers) {
    for (std::size_t i = 0; i < n; ++i) b[i] = (x >> i) & 1;
    out.bitstrings.push_back(b);
  }
  std::sort(out.bitstrings.begin(), out.bitstrings.end(), std::greater<>());
  return out;
}

Eigen::MatrixXd gs_correlation_matrix(const GroundStateManifold& m) {
  if (m.bitstrings.empty()) throw_data("empty ground-state manifold");
  const auto n = static_cast<Eigen::Index>(m.bitstrings.front().size());
  Eigen::MatrixXi agree = Eigen::MatrixXi::Zero(n, n);
  for (const auto& b : m.bitstrings)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        agree(i, j) += (b[static_cast<std::size_t>(i)] == b[static_cast<std::size_t>(j)]) ? 1 : -1;
  return agree.cast<double>() / static_cast<double>(m.bitstrings.size());
}

Eigen::MatrixXd gs_correlation_matrix(const Graph& g, double delta, const GroundStateOptions& options) {
  return gs_correlation_matrix(ground_state_manifold(g, delta, options));
}

GsEigvecPE gs_eigvec_pe(const Graph& g, double delta, std::size_t d, const GroundStateOptions& options) {
  const std::size_t n = g.num_nodes();
  if (d == 0 || d > n)
    throw_data("gs_eigvec_pe: d=" + std::to_string(d) + " must be in [1, N=" + std::to_string(n) + "]");
  GsEigvecPE out;
  const auto nn = static_cast<Eigen::Index>(n), dd = static_cast<Eigen::Index>(d);
  if (n > options.max_nodes) {
    out.vectors = Eigen::MatrixXd::Zero(nn, dd);
    out.values = Eigen::VectorXd::Zero(dd);
    out.above_cap = true;
    return out;
  }
  const SymmetricEigen eig = symmetric_eigen_descending(gs_correlation_matrix(g, delta, options));
  out.vectors = eig.vectors.leftCols(dd);
  out.values = eig.values.head(dd);
  for (auto [first, last] : eig.degenerate_clusters)
    if (first < d) out.degenerate_clusters.emplace_back(first, std::min(last, d));
  return out;
}

}  // namespace qpe
