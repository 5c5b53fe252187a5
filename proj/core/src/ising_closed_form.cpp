#include "qpe/ising_closed_form.hpp"

#include "qpe/error.hpp"

#include <cmath>
#include <complex>

namespace qpe {

namespace {

using cplx = std::complex<double>;

struct Ingredients {
  double c2, s2, cs, m;
  double t, delta;

  // phi(K) = cos^2 e^{2itK} + sin^2 e^{-2itK}; phi(-K) = conj(phi(K)).
  cplx phi(double K) const {
    return c2 * std::polar(1.0, 2.0 * t * K) + s2 * std::polar(1.0, -2.0 * t * K);
  }
};

}  // namespace

Eigen::MatrixXd closed_form_covariance(const Graph& g, const IsingPEParams& p) {
  if (!std::isfinite(p.theta) || !std::isfinite(p.t) || !std::isfinite(p.delta))
    throw_data("closed-form parameters must be finite");
  const std::size_t n = g.num_nodes();
  const double c = std::cos(p.theta), s = std::sin(p.theta);
  const Ingredients in{c * c, s * s, c * s, c * c - s * s, p.t, p.delta};
  const cplx onsite = std::polar(1.0, -2.0 * p.t * p.delta);

  // rho_i = e^{-2it delta} prod_{l in N(i)} phi(J_il)
  std::vector<cplx> rho(n);
  for (NodeId i = 0; i < n; ++i) {
    cplx r = onsite;
    for (const Neighbor& l : g.neighbors(i)) r *= in.phi(l.weight);
    rho[i] = r;
  }

  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (NodeId i = 0; i < n; ++i) {
    const double z = in.m * in.m + 4.0 * in.c2 * in.s2 * rho[i].real();
    cov(i, i) = 0.25 * (1.0 - z * z);
  }

  // Cov(Z_i, X_j) up to the 2cs factor: vanishes unless J_ij != 0.
  auto zx = [&](NodeId i, NodeId j, double jij) {
    if (jij == 0.0) return 0.0;
    cplx rest = onsite;
    for (const Neighbor& l : g.neighbors(j))
      if (l.node != i) rest *= in.phi(l.weight);
    const cplx hop = in.c2 * std::polar(1.0, 2.0 * p.t * jij) - in.s2 * std::polar(1.0, -2.0 * p.t * jij);
    return 2.0 * in.cs * (rest * hop).real() - in.m * 2.0 * in.cs * rho[j].real();
  };

  std::vector<double> wi(n, 0.0), wj(n, 0.0);
  std::vector<char> mark(n, 0);
  std::vector<NodeId> touched, partners;
  for (NodeId i = 0; i < n; ++i) {
    // Partners at distance 1 or 2 with a larger index.
    partners.clear();
    for (const Neighbor& a : g.neighbors(i)) {
      if (a.node > i && !mark[a.node]) { mark[a.node] = 1; partners.push_back(a.node); }
      for (const Neighbor& b : g.neighbors(a.node))
        if (b.node > i && !mark[b.node]) { mark[b.node] = 1; partners.push_back(b.node); }
    }
    for (NodeId j : partners) mark[j] = 0;
    for (const Neighbor& l : g.neighbors(i)) wi[l.node] = l.weight;

    for (NodeId j : partners) {
      const double jij = wi[j];
      touched.clear();
      for (const Neighbor& l : g.neighbors(i))
        if (l.node != j) { touched.push_back(l.node); mark[l.node] = 1; }
      for (const Neighbor& l : g.neighbors(j)) {
        wj[l.node] = l.weight;
        if (l.node != i && !mark[l.node]) { touched.push_back(l.node); mark[l.node] = 1; }
      }
      // G+ = e^{-4it delta} prod phi(J_il + J_jl), G- = prod phi(J_il - J_jl), l != i, j
      cplx gp = onsite * onsite, gm = 1.0;
      for (NodeId l : touched) {
        gp *= in.phi(wi[l] + wj[l]);
        gm *= in.phi(wi[l] - wj[l]);
        mark[l] = 0;
      }
      for (const Neighbor& l : g.neighbors(j)) wj[l.node] = 0.0;

      const double cxx = 2.0 * in.c2 * in.s2 *
                         (gp + gm - rho[i] * rho[j] - rho[i] * std::conj(rho[j])).real();
      const double v = 0.25 * (in.m * 2.0 * in.cs * (zx(i, j, jij) + zx(j, i, jij)) +
                               4.0 * in.c2 * in.s2 * cxx);
      cov(i, j) = cov(j, i) = v;
    }
    for (const Neighbor& l : g.neighbors(i)) wi[l.node] = 0.0;
  }
  return cov;
}

PETensor closed_form_pe_tensor(const Graph& g, std::span<const IsingPEParams> params) {
  if (params.empty()) throw_data("closed_form_pe_tensor needs at least one parameter triple");
  nlohmann::json meta;
  meta["encoding"] = "ising-cf";
  nlohmann::json triples = nlohmann::json::array();
  for (const auto& p : params) triples.push_back({{"theta", p.theta}, {"t", p.t}, {"delta", p.delta}});
  meta["params"] = {{"triples", triples}};
  meta["normalization"] = "none";
  meta["conventions"] = {{"state", "exp(+i theta sumY) exp(-i t H) exp(-i theta sumY) |0..0>"},
                         {"hamiltonian", "sum J_ij Z_i Z_j - delta sum Z_i"},
                         {"occupation", "covariance identical for (I-Z)/2 and (I+Z)/2"},
                         {"diagonal", "variance"}};
  PETensor out(g.num_nodes(), params.size(), std::move(meta));
  for (std::size_t k = 0; k < params.size(); ++k) out.set_slice(k, closed_form_covariance(g, params[k]));
  out.check_finite();
  return out;
}

}  // namespace qpe
