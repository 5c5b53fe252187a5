#include "qpe/subspace_walks.hpp"

#include "qpe/error.hpp"
#include "qpe/random.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace qpe {

namespace {

using cplx = std::complex<double>;

constexpr std::size_t max_sector_dimension = 4'000'000;

double binomial(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

}  // namespace

SubspaceOperator::SubspaceOperator(const Graph& g, std::size_t k) : n_(g.num_nodes()), k_(k) {
  if (k < 1 || k > n_)
    throw_data("particle count k=" + std::to_string(k) + " must be in [1, N=" +
               std::to_string(n_) + "]");
  if (binomial(n_, k) > static_cast<double>(max_sector_dimension))
    throw CapacityError("k-particle sector dimension exceeds " + std::to_string(max_sector_dimension));

  std::vector<NodeId> comb(k);
  for (std::size_t i = 0; i < k; ++i) comb[i] = static_cast<NodeId>(i);
  while (true) {
    index_.emplace(comb, basis_.size());
    basis_.push_back(comb);
    std::size_t pos = k;
    while (pos > 0 && comb[pos - 1] == n_ - k + pos - 1) --pos;
    if (pos == 0) break;
    ++comb[pos - 1];
    for (std::size_t r = pos; r < k; ++r) comb[r] = comb[r - 1] + 1;
  }

  std::vector<Eigen::Triplet<double>> triplets;
  std::vector<char> occupied(n_, 0);
  std::vector<NodeId> moved;
  for (std::size_t row = 0; row < basis_.size(); ++row) {
    const auto& s = basis_[row];
    for (NodeId v : s) occupied[v] = 1;
    for (std::size_t p = 0; p < k; ++p) {
      for (const Neighbor& nb : g.neighbors(s[p])) {
        if (occupied[nb.node]) continue;
        moved = s;
        moved[p] = nb.node;
        std::sort(moved.begin(), moved.end());
        triplets.emplace_back(static_cast<int>(row), static_cast<int>(index_.at(moved)),
                              2.0 * nb.weight);
      }
    }
    for (NodeId v : s) occupied[v] = 0;
  }
  const auto dim = static_cast<Eigen::Index>(basis_.size());
  matrix_.resize(dim, dim);
  matrix_.setFromTriplets(triplets.begin(), triplets.end());
  matrix_.makeCompressed();
}

std::size_t SubspaceOperator::index_of(std::span<const NodeId> subset) const {
  std::vector<NodeId> key(subset.begin(), subset.end());
  std::sort(key.begin(), key.end());
  if (key.size() != k_) throw_data("subset has the wrong particle count");
  if (std::adjacent_find(key.begin(), key.end()) != key.end())
    throw_data("subset repeats a node");
  for (NodeId v : key)
    if (v >= n_) throw_data("initial state references nonexistent node " + std::to_string(v));
  return index_.at(key);
}

Eigen::VectorXd SubspaceOperator::apply_sorted(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y(x.size());
  std::vector<double> terms;
  for (Eigen::Index r = 0; r < matrix_.outerSize(); ++r) {
    terms.clear();
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(matrix_, r); it; ++it)
      terms.push_back(it.value() * x[it.col()]);
    std::sort(terms.begin(), terms.end());
    double s = 0.0;
    for (double v : terms) s += v;
    y[r] = s;
  }
  return y;
}

SubspaceOperator xy_subspace_hamiltonian(const Graph& g, std::size_t k) {
  return SubspaceOperator(g, k);
}

std::string_view to_string(InitialKind kind) {
  switch (kind) {
    case InitialKind::localized: return "localized";
    case InitialKind::all_localized: return "all_localized";
    case InitialKind::uniform_pairs: return "uniform_pairs";
    case InitialKind::uniform_edges: return "uniform_edges";
  }
  return "?";
}

InitialKind parse_initial_kind(std::string_view name) {
  for (auto k : {InitialKind::localized, InitialKind::all_localized, InitialKind::uniform_pairs,
                 InitialKind::uniform_edges})
    if (name == to_string(k)) return k;
  throw_data("unknown initial distribution '" + std::string(name) + "'");
}

Eigen::VectorXd initial_amplitudes(const SubspaceOperator& op, const Graph& g,
                                   const InitialDistribution& init) {
  const auto dim = static_cast<Eigen::Index>(op.dimension());
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(dim);
  switch (init.kind) {
    case InitialKind::localized:
      psi[static_cast<Eigen::Index>(op.index_of(init.nodes))] = 1.0;
      return psi;
    case InitialKind::uniform_pairs:
      psi.setConstant(1.0 / std::sqrt(static_cast<double>(dim)));
      return psi;
    case InitialKind::uniform_edges: {
      if (op.particles() != 2) throw_data("uniform_edges needs the two-particle sector");
      if (g.num_edges() == 0) return psi;
      const double a = 1.0 / std::sqrt(static_cast<double>(g.num_edges()));
      for (const Edge& e : g.edges()) {
        const NodeId pair[2] = {e.u, e.v};
        psi[static_cast<Eigen::Index>(op.index_of(pair))] = a;
      }
      return psi;
    }
    case InitialKind::all_localized:
      break;
  }
  throw_data("all_localized does not define a single initial state");
}

SubspacePropagator::SubspacePropagator(const SubspaceOperator& op) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.dense());
  if (solver.info() != Eigen::Success) throw_numeric("sector eigendecomposition did not converge");
  values_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

Eigen::MatrixXcd SubspacePropagator::propagator(double t) const {
  Eigen::VectorXcd phase(values_.size());
  for (Eigen::Index m = 0; m < values_.size(); ++m) phase[m] = std::polar(1.0, -values_[m] * t);
  const Eigen::MatrixXcd v = vectors_.cast<cplx>();
  return v * phase.asDiagonal() * v.transpose();
}

Eigen::MatrixXd SubspacePropagator::transition_probabilities(double t) const {
  // U is symmetric, so row a equally reads <b|U|a>.
  return propagator(t).cwiseAbs2();
}

Eigen::VectorXd SubspacePropagator::evolve_probabilities(const Eigen::VectorXcd& psi, double t) const {
  Eigen::VectorXcd c = vectors_.transpose().cast<cplx>() * psi;
  for (Eigen::Index m = 0; m < values_.size(); ++m) c[m] *= std::polar(1.0, -values_[m] * t);
  return (vectors_.cast<cplx>() * c).cwiseAbs2();
}

Eigen::MatrixXd cqrw_probabilities(const Graph& g, std::size_t k, double t,
                                   const InitialDistribution& init) {
  if (!std::isfinite(t) || t < 0) throw_data("walk time must be finite and non-negative");
  const SubspaceOperator op(g, k);
  const SubspacePropagator prop(op);
  if (init.kind == InitialKind::all_localized) return prop.transition_probabilities(t);
  const Eigen::VectorXd psi = initial_amplitudes(op, g, init);
  return prop.evolve_probabilities(psi.cast<cplx>(), t).transpose();
}

std::vector<double> sample_times(std::size_t K, double t_min, double t_max, std::uint64_t seed) {
  if (K == 0) throw_data("sample_times needs K >= 1");
  if (!std::isfinite(t_min) || !std::isfinite(t_max) || t_min < 0 || t_min >= t_max)
    throw_data("sample_times needs 0 <= t_min < t_max");
  Rng rng(seed);
  std::vector<double> out(K);
  for (double& t : out) t = rng.uniform(t_min, t_max);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

using cplx = std::complex<double>;

nlohmann::json walk_metadata(std::string_view name, std::span<const double> times,
                             const InitialDistribution& init) {
  nlohmann::json m;
  m["encoding"] = name;
  m["params"] = {{"times", std::vector<double>(times.begin(), times.end())},
                 {"initial", to_string(init.kind)}};
  if (!init.nodes.empty()) m["params"]["initial_nodes"] = init.nodes;
  m["normalization"] = "none";
  return m;
}

}  // namespace

PETensor qrw_pe_tensor(const Graph& g, std::size_t walkers, std::span<const double> times,
                       const InitialDistribution& init) {
  if (times.empty()) throw_data("qrw_pe_tensor needs at least one time");
  for (double t : times)
    if (!std::isfinite(t) || t < 0) throw_data("walk times must be finite and non-negative");
  if (walkers != 1 && walkers != 2) throw_data("walkers must be 1 or 2");
  const std::size_t n = g.num_nodes();
  const std::size_t K = times.size();

  if (walkers == 1) {
    if (init.kind != InitialKind::all_localized)
      throw_data("the one-walker tensor is defined for all_localized starts only");
    PETensor out(n, K + 1, walk_metadata("cqrw1", times, init));
    out.set_slice(0, Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
    const SubspaceOperator op(g, 1);
    const SubspacePropagator prop(op);
    for (std::size_t m = 0; m < K; ++m) out.set_slice(m + 1, prop.transition_probabilities(times[m]));
    return out;
  }

  nlohmann::json meta = walk_metadata("qrw2", times, init);
  meta["diagonal"] = "zero (pair basis excludes repeated nodes)";
  PETensor out(n, K + 1, std::move(meta));
  out.set_slice(0, Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
  if (n < 2) return out;
  const SubspaceOperator op(g, 2);
  const SubspacePropagator prop(op);
  Eigen::VectorXcd psi;
  if (init.kind != InitialKind::all_localized) psi = initial_amplitudes(op, g, init).cast<cplx>();
  for (std::size_t m = 0; m < K; ++m) {
    Eigen::VectorXd probs;
    if (init.kind == InitialKind::all_localized)
      probs = prop.transition_probabilities(times[m]).diagonal();
    else
      probs = prop.evolve_probabilities(psi, times[m]);
    for (std::size_t r = 0; r < op.dimension(); ++r) {
      const auto& pair = op.basis()[r];
      out(pair[0], pair[1], m + 1) = out(pair[1], pair[0], m + 1) = probs[static_cast<Eigen::Index>(r)];
    }
  }
  return out;
}

std::string_view to_string(QirwNormalization n) {
  return n == QirwNormalization::per_step ? "per_step" : "none";
}

namespace {

using cplx = std::complex<double>;

double sorted_norm(const Eigen::VectorXd& v) {
  std::vector<double> sq(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) sq[static_cast<std::size_t>(i)] = v[i] * v[i];
  std::sort(sq.begin(), sq.end());
  double s = 0.0;
  for (double x : sq) s += x;
  return std::sqrt(s);
}

}  // namespace

PETensor qirw_discrete(const Graph& g, std::size_t K, const InitialDistribution& init,
                       QirwNormalization normalization) {
  const std::size_t n = g.num_nodes();
  nlohmann::json meta;
  meta["encoding"] = "qirw2";
  meta["params"] = {{"K", K}, {"initial", to_string(init.kind)}};
  if (!init.nodes.empty()) meta["params"]["initial_nodes"] = init.nodes;
  meta["normalization"] = to_string(normalization);
  meta["diagonal"] = "zero (pair basis excludes repeated nodes)";
  PETensor out(n, K + 1, std::move(meta));
  if (n < 2) return out;

  const SubspaceOperator op(g, 2);
  auto step = [&](Eigen::VectorXd& v, std::size_t k) {
    v = op.apply_sorted(v);
    if (normalization == QirwNormalization::per_step) {
      const double nv = sorted_norm(v);
      if (nv > 0) v /= nv;
    } else if (!v.allFinite()) {
      throw_numeric("raw 2-QiRW overflowed at step " + std::to_string(k) + "; use per_step normalization");
    }
  };
  if (init.kind == InitialKind::all_localized) {
    // Return amplitude <ij|H^k|ij>, each start propagated on its own.
    for (std::size_t r = 0; r < op.dimension(); ++r) {
      const auto& pair = op.basis()[r];
      Eigen::VectorXd v = Eigen::VectorXd::Unit(static_cast<Eigen::Index>(op.dimension()), static_cast<Eigen::Index>(r));
      for (std::size_t k = 0; k <= K; ++k) {
        if (k > 0) step(v, k);
        out(pair[0], pair[1], k) = out(pair[1], pair[0], k) = v[static_cast<Eigen::Index>(r)];
      }
    }
    return out;
  }
  Eigen::VectorXd v = initial_amplitudes(op, g, init);
  for (std::size_t k = 0; k <= K; ++k) {
    if (k > 0) step(v, k);
    for (std::size_t r = 0; r < op.dimension(); ++r) {
      const auto& pair = op.basis()[r];
      out(pair[0], pair[1], k) = out(pair[1], pair[0], k) = v[static_cast<Eigen::Index>(r)];
    }
  }
  return out;
}

}  // namespace qpe
