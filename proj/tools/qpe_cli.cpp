#include "qpe/attention.hpp"
#include "qpe/classical_pe.hpp"
#include "qpe/datasets.hpp"
#include "qpe/error.hpp"
#include "qpe/gdwl.hpp"
#include "qpe/ground_state.hpp"
#include "qpe/ising_closed_form.hpp"
#include "qpe/pe_tensor.hpp"
#include "qpe/quantum_sim.hpp"
#include "qpe/random.hpp"
#include "qpe/srg_fixtures.hpp"
#include "qpe/subspace_walks.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace qpe;

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(std::move(r));
  }
  return rows;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// ---- pe compute ------------------------------------------------------------

struct PeArgs {
  std::string graph, encoding, out;
  std::size_t steps = 0;  // 0 means the encoding's default
  std::size_t times = 20;
  double t_min = 0.1, t_max = std::numbers::pi;
  std::uint64_t seed = 0;
  std::string initial;
  std::string normalization = "per_step";
  std::size_t dim = 10;
  std::string laplacian = "sym_normalized";
  double delta = default_delta;
  std::vector<std::string> params;
};

IsingPEParams parse_triple(const std::string& text) {
  IsingPEParams p;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> p.theta >> c1 >> p.t >> c2 >> p.delta) || c1 != ',' || c2 != ',' || !(in >> std::ws).eof())
    throw Error(ErrorKind::usage, "--param expects theta,t,delta, got '" + text + "'");
  return p;
}

QirwNormalization parse_normalization(const std::string& s) {
  if (s == "per_step") return QirwNormalization::per_step;
  if (s == "none") return QirwNormalization::none;
  throw Error(ErrorKind::usage, "unknown normalization '" + s + "'");
}

int run_pe_compute(const PeArgs& a) {
  const Graph g = load_graph_file(a.graph);
  const std::size_t n = g.num_nodes();
  PETensor t;
  const std::string& e = a.encoding;
  if (e == "rrwp") {
    t = rrwp(g, a.steps ? a.steps : 21);
  } else if (e == "rwse") {
    const std::size_t K = a.steps ? a.steps : 21;
    t = diagonal_tensor(rwse(g, K), {{"encoding", "rwse"}, {"params", {{"K", K}}}, {"normalization", "none"}});
  } else if (e == "le") {
    const LaplacianMode mode = parse_laplacian_mode(a.laplacian);
    const std::size_t d = std::min(a.dim, n);
    const LaplacianEigvecs le = laplacian_eigvecs(g, d, mode);
    t = diagonal_tensor(le.vectors, {{"encoding", "le"},
                                     {"params", {{"d", d}, {"mode", to_string(mode)}}},
                                     {"eigenvalues", std::vector<double>(le.values.data(), le.values.data() + le.values.size())},
                                     {"normalization", "unit eigenvectors, largest entry positive"}});
  } else if (e == "gs-eig") {
    const std::size_t d = std::min(a.dim, n);
    const GsEigvecPE pe = gs_eigvec_pe(g, a.delta, d);
    t = diagonal_tensor(pe.vectors, {{"encoding", "gs-eig"},
                                     {"params", {{"d", d}, {"delta", a.delta}}},
                                     {"above_cap", pe.above_cap},
                                     {"eigenvalues", std::vector<double>(pe.values.data(), pe.values.data() + pe.values.size())},
                                     {"normalization", "unit eigenvectors, largest entry positive"}});
  } else if (e == "cqrw1" || e == "qrw2") {
    const auto times = sample_times(a.times, a.t_min, a.t_max, a.seed);
    const std::size_t walkers = e == "cqrw1" ? 1 : 2;
    const std::string init = a.initial.empty() ? "all_localized" : a.initial;
    InitialDistribution dist = InitialDistribution::of(parse_initial_kind(init));
    t = qrw_pe_tensor(g, walkers, times, dist);
    t.metadata()["params"]["seed"] = a.seed;
  } else if (e == "qirw2") {
    const std::string init = a.initial.empty() ? "uniform_edges" : a.initial;
    t = qirw_discrete(g, a.steps ? a.steps : 20, InitialDistribution::of(parse_initial_kind(init)),
                      parse_normalization(a.normalization));
  } else if (e == "ising-cf") {
    if (a.params.empty()) throw Error(ErrorKind::usage, "ising-cf needs at least one --param theta,t,delta");
    std::vector<IsingPEParams> ps;
    for (const auto& s : a.params) ps.push_back(parse_triple(s));
    t = closed_form_pe_tensor(g, ps);
  } else {
    throw Error(ErrorKind::usage, "unknown encoding '" + e + "'");
  }
  t.check_finite();
  save_qpet(t, a.out);
  emit({{"command", "pe compute"},
        {"encoding", e},
        {"num_nodes", t.num_nodes()},
        {"num_slices", t.num_slices()},
        {"out", a.out},
        {"metadata", t.metadata()}});
  return 0;
}

// ---- gdwl test -------------------------------------------------------------

json histogram_json(const ColorPartition& p) {
  json h = json::array();
  for (const auto& [color, count] : p.histogram) h.push_back({color, count});
  return h;
}

int run_gdwl(const std::string& f1, const std::string& f2, const std::string& provider_name,
             std::size_t steps, const std::string& initial) {
  const Graph g1 = load_graph_file(f1), g2 = load_graph_file(f2);
  DistanceProvider p;
  p.kind = parse_distance_kind(provider_name);
  p.steps = steps ? steps : (p.kind == DistanceKind::qirw2 ? 20 : 21);
  if (!initial.empty()) p.initial = InitialDistribution::of(parse_initial_kind(initial));
  const Distinguishability d = gdwl_distinguish(g1, g2, p);
  emit({{"command", "gdwl test"},
        {"provider", to_string(p.kind)},
        {"steps", p.kind == DistanceKind::spd ? 0 : p.steps},
        {"verdict", d.distinguishable ? "distinguishable" : "indistinguishable"},
        {"rounds", {d.first.rounds, d.second.rounds}},
        {"classes", {d.first.num_classes(), d.second.num_classes()}},
        {"histograms", {histogram_json(d.first), histogram_json(d.second)}}});
  return 0;
}

// ---- srg check -------------------------------------------------------------

int run_srg(const std::string& file, std::size_t max_power, const std::string& against) {
  const Graph g = load_graph_file(file);
  std::string why;
  const auto params = srg_parameters(g, &why);
  if (!params) throw DataError(why);
  json fits = json::array();
  double worst = 0;
  for (const PowerIdentity& f : srg_power_identity_check(g, max_power)) {
    fits.push_back({{"power", f.power}, {"alpha", f.alpha}, {"beta", f.beta}, {"gamma", f.gamma}, {"residual", f.residual}});
    worst = std::max(worst, f.residual);
  }
  json out = {{"command", "srg check"},
              {"graph", file},
              {"parameters", {{"n", params->n}, {"k", params->k}, {"lambda", params->lambda}, {"mu", params->mu}}},
              {"power_identity", fits},
              {"max_residual", worst}};
  if (!against.empty()) {
    const Graph h = load_graph_file(against);
    const auto cert = certify_non_isomorphic(g, h);
    const auto other = srg_parameters(h);
    out["against"] = {{"graph", against},
                      {"same_parameters", other && *other == *params},
                      {"non_isomorphic", cert.certified},
                      {"invariant", cert.invariant},
                      {"profiles", {cert.first, cert.second}}};
  }
  emit(out);
  return 0;
}

// ---- gen -------------------------------------------------------------------

int run_gen(const std::string& kind, std::size_t per_class, std::uint64_t seed, double scale, const std::string& out) {
  LabeledDataset ds;
  if (kind == "cladder")
    ds = gen_cladder(per_class, seed, CladderOptions::scaled(scale));
  else if (kind == "spattern")
    ds = gen_spattern(per_class, seed, SpatternOptions::scaled(scale));
  else
    throw Error(ErrorKind::usage, "unknown dataset '" + kind + "'");
  save_dataset(ds, out);
  std::size_t lo = ds.graphs.front().num_nodes(), hi = lo;
  for (const Graph& g : ds.graphs) {
    lo = std::min(lo, g.num_nodes());
    hi = std::max(hi, g.num_nodes());
  }
  emit({{"command", "gen " + kind},
        {"num_graphs", ds.graphs.size()},
        {"per_class", per_class},
        {"seed", seed},
        {"scale", scale},
        {"nodes", {{"min", lo}, {"max", hi}}},
        {"splits", {{"train", ds.splits.train.size()}, {"val", ds.splits.val.size()}, {"test", ds.splits.test.size()}}},
        {"out", out}});
  return 0;
}

// ---- randomize -------------------------------------------------------------

int run_randomize(const std::string& kind, const std::string& file, std::uint64_t seed, long swaps,
                  const std::string& out) {
  const Graph g = load_graph_file(file);
  json summary = {{"command", "randomize " + kind}, {"seed", seed}};
  Graph result = g;
  if (kind == "config") {
    const std::size_t n = swaps < 0 ? default_swap_count(g) : static_cast<std::size_t>(swaps);
    RandomizeResult r = config_model_randomize(g, n, seed);
    summary["requested_swaps"] = n;
    summary["swaps"] = r.swaps;
    summary["warnings"] = r.warnings;
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
    result = std::move(r.graph);
  } else if (kind == "gnm") {
    result = gnm_randomize(g, seed);
  } else if (kind == "features") {
    result = permute_features(g, seed);
  } else {
    throw Error(ErrorKind::usage, "unknown randomization '" + kind + "'");
  }
  summary["num_nodes"] = result.num_nodes();
  summary["num_edges"] = result.num_edges();
  if (out.empty()) {
    summary["graph"] = json::parse(to_json_text(result));
  } else {
    save_graph_file(result, out);
    summary["out"] = out;
  }
  emit(summary);
  return 0;
}

// ---- verify closed-form ----------------------------------------------------

int run_verify(std::size_t trials, std::size_t max_nodes, std::uint64_t seed, double tolerance) {
  if (max_nodes < 2) throw DataError("--max-nodes must be >= 2");
  Rng rng(seed);
  double worst = 0;
  std::size_t worst_trial = 0;
  for (std::size_t k = 0; k < trials; ++k) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(2, max_nodes));
    const double p = rng.uniform(0.1, 0.9);
    const bool weighted = rng.uniform() < 0.5;
    std::vector<Edge> edges;
    std::vector<double> w;
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v)
        if (rng.uniform() < p) {
          edges.push_back({u, v});
          w.push_back(weighted ? rng.uniform(-1.5, 1.5) : 1.0);
        }
    const Graph g(n, edges, w);
    const IsingPEParams ps{rng.uniform(0, 2 * std::numbers::pi), rng.uniform(0, 2 * std::numbers::pi),
                           rng.uniform(-1.5, 1.5)};
    CovarianceConventions conv;
    conv.qubit_cap = std::max<std::size_t>(default_qubit_cap, max_nodes);
    const double dev = (closed_form_covariance(g, ps) - occupation_covariance_bruteforce(g, ps.theta, ps.t, ps.delta, conv))
                           .cwiseAbs()
                           .maxCoeff();
    if (dev > worst) {
      worst = dev;
      worst_trial = k;
    }
  }
  const bool ok = worst <= tolerance;
  emit({{"command", "verify closed-form"},
        {"trials", trials},
        {"max_nodes", max_nodes},
        {"seed", seed},
        {"max_abs_deviation", worst},
        {"worst_trial", worst_trial},
        {"tolerance", tolerance},
        {"passed", ok}});
  return ok ? 0 : static_cast<int>(ErrorKind::numeric);
}

// ---- attn forward ----------------------------------------------------------

int run_attn(const std::string& file, std::size_t heads, std::uint64_t seed, std::size_t layers, bool softmax,
             std::size_t hidden) {
  const Graph g = load_graph_file(file);
  RandomHeadOptions opt;
  opt.layers = layers;
  opt.softmax = softmax;
  const auto hs = random_heads(g, heads, seed, opt);
  Eigen::MatrixXd H;
  if (g.has_node_features()) {
    H = g.node_features();
  } else {
    H.resize(static_cast<Eigen::Index>(g.num_nodes()), 1);
    for (NodeId v = 0; v < g.num_nodes(); ++v) H(v, 0) = static_cast<double>(g.degree(v));
  }
  std::vector<Eigen::MatrixXd> A, W;
  json head_json = json::array();
  for (std::size_t h = 0; h < hs.size(); ++h) {
    Rng wr(derive_seed(derive_seed(seed, h), 1));
    Eigen::MatrixXd w(2 * H.cols(), static_cast<Eigen::Index>(hidden));
    for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = wr.uniform(-1.0, 1.0);
    A.push_back(hs[h].attention);
    W.push_back(std::move(w));
    head_json.push_back({{"schedule", hs[h].params.schedule}, {"attention", matrix_json(hs[h].attention)}});
  }
  const Eigen::MatrixXd out = gtqc_multihead_forward(H, A, W);
  emit({{"command", "attn forward"},
        {"heads", head_json},
        {"seed", seed},
        {"softmax", softmax},
        {"output", matrix_json(out)}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum and classical graph positional encodings"};
  app.require_subcommand(1);
  app.fallthrough(false);

  PeArgs pe;
  auto* pe_cmd = app.add_subcommand("pe", "Positional encodings");
  pe_cmd->require_subcommand(1);
  auto* compute = pe_cmd->add_subcommand("compute", "Compute an encoding tensor and write it as QPET");
  compute->add_option("--graph", pe.graph, "Graph JSON file")->required();
  compute->add_option("--encoding", pe.encoding, "Encoding")
      ->required()
      ->check(CLI::IsMember({"rrwp", "rwse", "le", "gs-eig", "cqrw1", "qrw2", "qirw2", "ising-cf"}));
  compute->add_option("--out", pe.out, "Output QPET file")->required();
  compute->add_option("--steps", pe.steps, "Walk steps K (rrwp/rwse 21, qirw2 20)");
  compute->add_option("--times", pe.times, "Number of random walk times")->capture_default_str();
  compute->add_option("--t-min", pe.t_min, "Minimum walk time")->capture_default_str();
  compute->add_option("--t-max", pe.t_max, "Maximum walk time")->capture_default_str();
  compute->add_option("--seed", pe.seed, "Seed for walk times")->capture_default_str();
  compute->add_option("--initial", pe.initial, "Initial distribution")
      ->check(CLI::IsMember({"all_localized", "uniform_pairs", "uniform_edges"}));
  compute->add_option("--normalization", pe.normalization, "qirw2 normalization")
      ->check(CLI::IsMember({"per_step", "none"}))
      ->capture_default_str();
  compute->add_option("--dim", pe.dim, "Eigenvector count for le / gs-eig")->capture_default_str();
  compute->add_option("--laplacian", pe.laplacian, "Laplacian mode for le")->capture_default_str();
  compute->add_option("--delta", pe.delta, "Onsite term for gs-eig")->capture_default_str();
  compute->add_option("--param", pe.params, "ising-cf triple theta,t,delta (repeatable)");

  std::string g1, g2, provider = "spd", gd_initial;
  std::size_t gd_steps = 0;
  auto* gdwl = app.add_subcommand("gdwl", "Generalised-distance WL tests");
  gdwl->require_subcommand(1);
  auto* gdwl_test = gdwl->add_subcommand("test", "Compare two graphs under GD-WL");
  gdwl_test->add_option("--g1", g1, "First graph")->required();
  gdwl_test->add_option("--g2", g2, "Second graph")->required();
  gdwl_test->add_option("--provider", provider, "Distance provider")
      ->check(CLI::IsMember({"spd", "rrwp", "qirw2"}))
      ->capture_default_str();
  gdwl_test->add_option("--steps", gd_steps, "Steps K (rrwp 21, qirw2 20)");
  gdwl_test->add_option("--initial", gd_initial, "qirw2 initial distribution (default all_localized)")
      ->check(CLI::IsMember({"all_localized", "uniform_pairs", "uniform_edges"}));

  std::string srg_graph, srg_against;
  std::size_t max_power = 10;
  auto* srg = app.add_subcommand("srg", "Strongly regular graph tools");
  srg->require_subcommand(1);
  auto* srg_check = srg->add_subcommand("check", "Parameters and adjacency-power identity");
  srg_check->add_option("--graph", srg_graph, "Graph JSON file")->required();
  srg_check->add_option("--max-power", max_power, "Highest power n")->capture_default_str();
  srg_check->add_option("--against", srg_against, "Second graph for a non-isomorphism certificate");

  std::size_t per_class = 0;
  std::uint64_t gen_seed = 0;
  double scale = 1.0;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Synthetic datasets");
  gen->require_subcommand(1);
  std::string gen_kind;
  for (const char* name : {"spattern", "cladder"}) {
    auto* sub = gen->add_subcommand(name, std::string("Generate ") + name);
    sub->add_option("--per-class", per_class, "Graphs per class")->required();
    sub->add_option("--seed", gen_seed, "Seed")->capture_default_str();
    sub->add_option("--scale", scale, "Size scale (1 = full size)")->capture_default_str();
    sub->add_option("--out", gen_out, "Output directory")->required();
    sub->callback([&gen_kind, name] { gen_kind = name; });
  }

  std::string rnd_graph, rnd_out, rnd_kind;
  std::uint64_t rnd_seed = 0;
  long rnd_swaps = -1;
  auto* rnd = app.add_subcommand("randomize", "Dataset randomisation");
  rnd->require_subcommand(1);
  for (const char* name : {"config", "gnm", "features"}) {
    auto* sub = rnd->add_subcommand(name, std::string("Randomise by ") + name);
    sub->add_option("--graph", rnd_graph, "Graph JSON file")->required();
    sub->add_option("--seed", rnd_seed, "Seed")->capture_default_str();
    sub->add_option("--out", rnd_out, "Output graph file (default: embed in summary)");
    if (std::string(name) == "config") sub->add_option("--swaps", rnd_swaps, "Swap count (default 10|E|)");
    sub->callback([&rnd_kind, name] { rnd_kind = name; });
  }

  std::size_t trials = 200, max_nodes = 12;
  std::uint64_t verify_seed = 0;
  double tolerance = 1e-9;
  auto* verify = app.add_subcommand("verify", "Oracle checks");
  verify->require_subcommand(1);
  auto* closed = verify->add_subcommand("closed-form", "Closed-form covariance against statevector simulation");
  closed->add_option("--trials", trials, "Random instances")->capture_default_str();
  closed->add_option("--max-nodes", max_nodes, "Largest graph")->capture_default_str();
  closed->add_option("--seed", verify_seed, "Seed")->capture_default_str();
  closed->add_option("--tolerance", tolerance, "Pass threshold")->capture_default_str();

  std::string attn_graph;
  std::size_t heads = 1, layers = 1, hidden = 4;
  std::uint64_t attn_seed = 0;
  bool softmax = false;
  auto* attn = app.add_subcommand("attn", "Quantum attention");
  attn->require_subcommand(1);
  auto* forward = attn->add_subcommand("forward", "Random-parameter attention heads and one layer forward");
  forward->add_option("--graph", attn_graph, "Graph JSON file")->required();
  forward->add_option("--heads", heads, "Number of heads")->capture_default_str();
  forward->add_option("--seed", attn_seed, "Seed")->capture_default_str();
  forward->add_option("--layers", layers, "Layers p of each head's state")->capture_default_str();
  forward->add_option("--hidden", hidden, "Output width per head")->capture_default_str();
  forward->add_flag("--softmax", softmax, "Row softmax");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ErrorKind::usage);
  }

  try {
    if (compute->parsed()) return run_pe_compute(pe);
    if (gdwl_test->parsed()) return run_gdwl(g1, g2, provider, gd_steps, gd_initial);
    if (srg_check->parsed()) return run_srg(srg_graph, max_power, srg_against);
    if (gen->parsed()) return run_gen(gen_kind, per_class, gen_seed, scale, gen_out);
    if (rnd->parsed()) return run_randomize(rnd_kind, rnd_graph, rnd_seed, rnd_swaps, rnd_out);
    if (closed->parsed()) return run_verify(trials, max_nodes, verify_seed, tolerance);
    if (forward->parsed()) return run_attn(attn_graph, heads, attn_seed, layers, softmax, hidden);
  } catch (const qpe::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ErrorKind::data);
  }
  return static_cast<int>(ErrorKind::usage);
}
