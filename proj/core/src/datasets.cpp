#include "qpe/datasets.hpp"

#include "qpe/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace qpe {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<NodeId> random_permutation(std::size_t n, Rng& rng) {
  std::vector<NodeId> pi(n);
  for (std::size_t i = 0; i < n; ++i) pi[i] = static_cast<NodeId>(i);
  rng.shuffle(std::span<NodeId>(pi));
  return pi;
}

Splits stratified_split(std::span<const int> labels, std::uint64_t seed, double train, double val) {
  if (train < 0 || val < 0 || train + val > 1.0) throw_data("invalid split fractions");
  std::set<int> classes(labels.begin(), labels.end());
  Splits s;
  Rng rng(seed);
  for (int c : classes) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == c) idx.push_back(i);
    rng.shuffle(std::span<std::size_t>(idx));
    const auto n = static_cast<double>(idx.size());
    const auto n_train = static_cast<std::size_t>(std::llround(train * n));
    const auto n_val = std::min(idx.size() - n_train, static_cast<std::size_t>(std::llround(val * n)));
    s.train.insert(s.train.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
    s.val.insert(s.val.end(), idx.begin() + static_cast<std::ptrdiff_t>(n_train),
                 idx.begin() + static_cast<std::ptrdiff_t>(n_train + n_val));
    s.test.insert(s.test.end(), idx.begin() + static_cast<std::ptrdiff_t>(n_train + n_val), idx.end());
  }
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.val.begin(), s.val.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

namespace {

std::string graph_file_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "graph_%05zu.json", i);
  return buf;
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw_data("cannot open " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw_data("cannot write " + p.string());
  out << text;
}

}  // namespace

void save_dataset(const LabeledDataset& ds, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw_data("cannot create " + dir.string() + ": " + ec.message());
  for (std::size_t i = 0; i < ds.graphs.size(); ++i) save_graph_file(ds.graphs[i], dir / graph_file_name(i));
  std::string labels = "index,label\n";
  for (std::size_t i = 0; i < ds.labels.size(); ++i)
    labels += std::to_string(i) + "," + std::to_string(ds.labels[i]) + "\n";
  write_text(dir / "labels.csv", labels);
  const json splits = {{"train", ds.splits.train}, {"val", ds.splits.val}, {"test", ds.splits.test},
                       {"seed", ds.seed}};
  write_text(dir / "splits.json", splits.dump(1) + "\n");
  json meta = ds.metadata;
  meta["name"] = ds.name;
  meta["seed"] = ds.seed;
  meta["num_graphs"] = ds.graphs.size();
  write_text(dir / "metadata.json", meta.dump(1) + "\n");
}

LabeledDataset load_dataset(const fs::path& dir) {
  LabeledDataset ds;
  std::istringstream labels(read_text(dir / "labels.csv"));
  std::string line;
  std::getline(labels, line);
  if (line != "index,label") throw_data("labels.csv: unexpected header");
  for (std::size_t row = 0; std::getline(labels, line); ++row) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || std::stoul(line.substr(0, comma)) != row)
      throw_data("labels.csv: malformed row " + std::to_string(row));
    ds.labels.push_back(std::stoi(line.substr(comma + 1)));
    ds.graphs.push_back(load_graph_file(dir / graph_file_name(row)));
  }
  try {
    const json s = json::parse(read_text(dir / "splits.json"));
    ds.splits.train = s.at("train").get<std::vector<std::size_t>>();
    ds.splits.val = s.at("val").get<std::vector<std::size_t>>();
    ds.splits.test = s.at("test").get<std::vector<std::size_t>>();
    ds.seed = s.at("seed").get<std::uint64_t>();
    if (fs::exists(dir / "metadata.json")) {
      ds.metadata = json::parse(read_text(dir / "metadata.json"));
      ds.name = ds.metadata.value("name", "");
    }
  } catch (const json::exception& e) {
    throw_data(std::string("dataset metadata: ") + e.what());
  }
  return ds;
}

// ---- ladders ---------------------------------------------------------------

Graph ladder_graph(const LadderLayout& layout) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  const auto a = [](std::size_t i) { return static_cast<NodeId>(2 * i); };
  const auto b = [](std::size_t i) { return static_cast<NodeId>(2 * i + 1); };
  for (std::size_t i = 0; i < layout.rungs; ++i) {
    pairs.emplace_back(a(i), b(i));
    if (i + 1 < layout.rungs) {
      pairs.emplace_back(a(i), a(i + 1));
      pairs.emplace_back(b(i), b(i + 1));
    }
  }
  for (std::size_t sq : layout.diagonals) {
    if (sq + 1 >= layout.rungs) throw_data("ladder diagonal on square " + std::to_string(sq) + " out of range");
    pairs.emplace_back(a(sq), b(sq + 1));
  }
  return Graph::from_pairs(2 * layout.rungs, pairs);
}

LadderLayout concatenate(std::span<const LadderLayout> blocks) {
  LadderLayout out;
  for (const auto& blk : blocks) {
    for (std::size_t sq : blk.diagonals) out.diagonals.push_back(out.rungs + sq);
    out.rungs += blk.rungs;
  }
  return out;
}

LadderGroundStates ladder_ground_states(const LadderLayout& layout) {
  if (layout.rungs == 0) return {0, 1};
  std::vector<char> diag(layout.rungs, 0);
  for (std::size_t sq : layout.diagonals) diag.at(sq) = 1;
  // Rung states: 0 = empty, 1 = a occupied, 2 = b occupied.
  struct Cell {
    long size;
    std::uint64_t count;
  };
  Cell dp[3] = {{0, 1}, {1, 1}, {1, 1}};
  for (std::size_t i = 1; i < layout.rungs; ++i) {
    Cell next[3] = {{-1, 0}, {-1, 0}, {-1, 0}};
    for (int s = 0; s < 3; ++s)
      for (int t = 0; t < 3; ++t) {
        if (s != 0 && s == t) continue;             // rail conflict
        if (diag[i - 1] && s == 1 && t == 2) continue;  // a_{i-1} - b_i
        const long size = dp[s].size + (t != 0 ? 1 : 0);
        if (size > next[t].size) next[t] = {size, dp[s].count};
        else if (size == next[t].size) next[t].count += dp[s].count;
      }
    std::copy(std::begin(next), std::end(next), dp);
  }
  LadderGroundStates out{0, 0};
  for (const Cell& c : dp) {
    if (static_cast<std::size_t>(c.size) > out.mis_size) out = {static_cast<std::size_t>(c.size), c.count};
    else if (static_cast<std::size_t>(c.size) == out.mis_size) out.count += c.count;
  }
  return out;
}

LadderLayout cladder_block(int type, std::size_t length, std::size_t crossings, Rng& rng) {
  switch (type) {
    case 0:
      if (length < 1) break;
      return {length, {}};
    case 1: {
      if (length < 2) break;
      std::vector<std::size_t> even;
      for (std::size_t sq = 0; sq + 1 < length; sq += 2) even.push_back(sq);
      rng.shuffle(std::span<std::size_t>(even));
      even.resize(std::min(crossings, even.size()));
      std::sort(even.begin(), even.end());
      return {length, even};
    }
    case 2:
      if (length < 5) break;
      return {length - 2, {0, length - 4}};
    default:
      throw_data("unknown ladder block type " + std::to_string(type));
  }
  throw_data("ladder block of type " + std::to_string(type) + " cannot have length " + std::to_string(length));
}

CladderOptions CladderOptions::scaled(double s) {
  if (!(s > 0)) throw_data("scale must be positive");
  auto r = [s](double x) { return static_cast<std::size_t>(std::llround(x * s)); };
  CladderOptions o;
  o.min_length = std::max<std::size_t>(3, r(10));
  o.max_length = std::max(o.min_length + 1, r(52));
  o.min_crossings = std::max<std::size_t>(1, r(2));
  o.max_crossings = std::max(o.min_crossings, r(9));
  return o;
}

namespace {

json layout_json(const LadderLayout& l) { return {{"rungs", l.rungs}, {"diagonals", l.diagonals}}; }

Graph relabel(const Graph& g, Rng& rng, json& record) {
  const auto pi = random_permutation(g.num_nodes(), rng);
  record["permutation"] = pi;
  return permute(g, pi);
}

}  // namespace

LabeledDataset gen_cladder(std::size_t n_per_class, std::uint64_t seed, const CladderOptions& opt) {
  if (n_per_class == 0) throw_data("n_per_class must be >= 1");
  if (opt.min_length > opt.max_length || opt.min_crossings > opt.max_crossings)
    throw_data("invalid C-LADDER ranges");
  LabeledDataset ds;
  ds.name = "cladder";
  ds.seed = seed;
  ds.metadata["options"] = {{"min_length", opt.min_length}, {"max_length", opt.max_length},
                            {"min_crossings", opt.min_crossings}, {"max_crossings", opt.max_crossings},
                            {"sequence", cladder_sequence}};
  json records = json::array();
  for (int cls = 0; cls < 2; ++cls) {
    for (std::size_t k = 0; k < n_per_class; ++k) {
      const std::size_t index = ds.graphs.size();
      Rng rng(derive_seed(seed, index));
      std::vector<LadderLayout> blocks;
      json rec;
      rec["lengths"] = json::array();
      for (int b = 0; b < 7; ++b) {
        const int type = cladder_sequence[b];
        const std::size_t min_ok = type == 2 ? 5 : (type == 1 ? 2 : 1);
        std::size_t length = 0;
        for (std::size_t tries = 0;; ++tries) {
          if (tries >= opt.max_redraws)
            throw_data("C-LADDER: no admissible length for block " + std::to_string(b) + " in [" +
                       std::to_string(opt.min_length) + "," + std::to_string(opt.max_length) + "]");
          length = rng.uniform_int(opt.min_length, opt.max_length);
          if (static_cast<int>(length % 2) == cladder_parity[cls][b] && length >= min_ok) break;
        }
        const auto crossings = rng.uniform_int(opt.min_crossings, opt.max_crossings);
        blocks.push_back(cladder_block(type, length, crossings, rng));
        rec["lengths"].push_back(length);
      }
      const LadderLayout layout = concatenate(blocks);
      rec["blocks"] = json::array();
      for (const auto& blk : blocks) rec["blocks"].push_back(layout_json(blk));
      const auto gs = ladder_ground_states(layout);
      rec["ground_states"] = gs.count;
      rec["label"] = cls;
      ds.graphs.push_back(relabel(ladder_graph(layout), rng, rec));
      ds.labels.push_back(cls);
      records.push_back(std::move(rec));
    }
  }
  ds.metadata["graphs"] = std::move(records);
  ds.splits = stratified_split(ds.labels, derive_seed(seed, ~std::uint64_t{0}));
  return ds;
}

// ---- S-PATTERN -------------------------------------------------------------

Graph spattern_base_graph() {
  return Graph::from_pairs(8, {{0, 1}, {0, 3}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5},
                               {2, 6}, {3, 5}, {3, 6}, {3, 7}, {4, 5}, {4, 6}, {6, 7}});
}

std::optional<Graph> snake_polyomino(std::size_t cells, Rng& rng) {
  if (cells == 0) throw_data("snake needs at least one cell");
  using P = std::pair<int, int>;
  std::vector<P> chain{{0, 0}};
  std::set<P> used{{0, 0}};
  while (chain.size() < cells) {
    const auto [x, y] = chain.back();
    P opts[4] = {{x + 1, y}, {x - 1, y}, {x, y + 1}, {x, y - 1}};
    rng.shuffle(std::span<P>(opts));
    bool grown = false;
    for (const P& c : opts) {
      if (used.count(c)) continue;
      int touching = 0;
      for (const P& d : {P{c.first + 1, c.second}, P{c.first - 1, c.second}, P{c.first, c.second + 1},
                         P{c.first, c.second - 1}})
        touching += used.count(d) ? 1 : 0;
      if (touching != 1) continue;
      chain.push_back(c);
      used.insert(c);
      grown = true;
      break;
    }
    if (!grown) return std::nullopt;
  }
  std::map<P, NodeId> ids;
  auto id = [&](P p) {
    auto [it, inserted] = ids.emplace(p, static_cast<NodeId>(ids.size()));
    return it->second;
  };
  std::set<std::pair<NodeId, NodeId>> edges;
  auto add = [&](P p, P q) {
    NodeId a = id(p), b = id(q);
    edges.emplace(std::min(a, b), std::max(a, b));
  };
  for (const auto& [x, y] : chain) {
    add({x, y}, {x + 1, y});
    add({x, y}, {x, y + 1});
    add({x + 1, y}, {x + 1, y + 1});
    add({x, y + 1}, {x + 1, y + 1});
  }
  return Graph::from_pairs(ids.size(), {edges.begin(), edges.end()});
}

bool has_two_complementary_ground_states(const Graph& g, double delta, const GroundStateOptions& options) {
  const auto m = ground_state_manifold(g, delta, options);
  if (m.bitstrings.size() != 2) return false;
  for (std::size_t i = 0; i < g.num_nodes(); ++i)
    if (m.bitstrings[0][i] == m.bitstrings[1][i]) return false;
  return true;
}

SpatternOptions SpatternOptions::scaled(double s) {
  if (!(s > 0)) throw_data("scale must be positive");
  auto r = [s](double x) { return static_cast<std::size_t>(std::llround(x * s)); };
  SpatternOptions o;
  o.min_cells = std::max<std::size_t>(2, r(100));
  o.max_cells = std::max(o.min_cells, r(120));
  return o;
}

LabeledDataset gen_spattern(std::size_t n_per_class, std::uint64_t seed, const SpatternOptions& opt) {
  if (n_per_class == 0) throw_data("n_per_class must be >= 1");
  if (opt.min_cells == 0 || opt.min_cells > opt.max_cells) throw_data("invalid S-PATTERN cell range");
  LabeledDataset ds;
  ds.name = "spattern";
  ds.seed = seed;
  ds.metadata["options"] = {{"min_cells", opt.min_cells}, {"max_cells", opt.max_cells},
                            {"validation_max_nodes", opt.validation_max_nodes}};
  const Graph base = spattern_base_graph();
  GroundStateOptions gs_opt;
  gs_opt.max_nodes = opt.validation_max_nodes;
  json records = json::array();
  for (int cls = 0; cls < 2; ++cls) {
    const NodeId ports[2] = {spattern_anchor_port, cls == 0 ? spattern_opposite_port : spattern_adjacent_port};
    for (std::size_t k = 0; k < n_per_class; ++k) {
      const std::size_t index = ds.graphs.size();
      Rng rng(derive_seed(seed, index));
      std::vector<std::pair<NodeId, NodeId>> pairs;
      for (const Edge& e : base.edges()) pairs.emplace_back(e.u, e.v);
      std::size_t offset = base.num_nodes();
      json rec;
      rec["label"] = cls;
      rec["blocks"] = json::array();
      bool validated = true;
      for (NodeId port : ports) {
        Graph block = Graph(1, {});
        for (std::size_t tries = 0;; ++tries) {
          if (tries >= opt.max_redraws) throw_numeric("S-PATTERN: no valid strongly correlated block found");
          const auto cells = static_cast<std::size_t>(rng.uniform_int(opt.min_cells, opt.max_cells));
          auto snake = snake_polyomino(cells, rng);
          if (!snake) continue;
          if (snake->num_nodes() > opt.validation_max_nodes) {
            validated = false;
          } else if (!has_two_complementary_ground_states(*snake, default_delta, gs_opt)) {
            continue;
          }
          block = std::move(*snake);
          break;
        }
        for (const Edge& e : block.edges())
          pairs.emplace_back(static_cast<NodeId>(offset + e.u), static_cast<NodeId>(offset + e.v));
        const auto attach = static_cast<NodeId>(offset + rng.uniform_int(0, block.num_nodes() - 1));
        pairs.emplace_back(attach, port);
        rec["blocks"].push_back({{"first", offset}, {"size", block.num_nodes()}, {"attach", attach}, {"port", port}});
        offset += block.num_nodes();
      }
      rec["validated"] = validated;
      ds.graphs.push_back(relabel(Graph::from_pairs(offset, pairs), rng, rec));
      ds.labels.push_back(cls);
      records.push_back(std::move(rec));
    }
  }
  ds.metadata["graphs"] = std::move(records);
  ds.splits = stratified_split(ds.labels, derive_seed(seed, ~std::uint64_t{0}));
  return ds;
}

// ---- randomisation ---------------------------------------------------------

RandomizeResult config_model_randomize(const Graph& g, std::size_t n_swaps, std::uint64_t seed) {
  RandomizeResult out{g, 0, {}};
  if (n_swaps == 0) return out;
  if (g.num_edges() < 2) {
    out.warnings.push_back("fewer than 2 edges: graph returned unchanged");
    return out;
  }
  std::vector<Edge> edges = g.edges();
  std::vector<double> weights = g.edge_weights();
  std::set<std::pair<NodeId, NodeId>> present;
  for (const Edge& e : edges) present.emplace(e.u, e.v);
  auto key = [](NodeId a, NodeId b) { return std::make_pair(std::min(a, b), std::max(a, b)); };

  Rng rng(seed);
  const std::size_t max_attempts = 100 * n_swaps + 1000;
  std::size_t attempts = 0;
  while (out.swaps < n_swaps && attempts < max_attempts) {
    ++attempts;
    const auto i = static_cast<std::size_t>(rng.uniform_int(0, edges.size() - 1));
    const auto j = static_cast<std::size_t>(rng.uniform_int(0, edges.size() - 1));
    if (i == j) continue;
    const NodeId a = edges[i].u, b = edges[i].v;
    NodeId c = edges[j].u, d = edges[j].v;
    if (rng.uniform_int(0, 1)) std::swap(c, d);
    // (a,b),(c,d) -> (a,d),(c,b)
    if (a == d || c == b) continue;
    if (present.count(key(a, d)) || present.count(key(c, b))) continue;
    present.erase(key(a, b));
    present.erase(key(c, d));
    present.insert(key(a, d));
    present.insert(key(c, b));
    edges[i] = {a, d};
    edges[j] = {c, b};
    ++out.swaps;
  }
  if (out.swaps < n_swaps)
    out.warnings.push_back("performed " + std::to_string(out.swaps) + " of " + std::to_string(n_swaps) +
                           " swaps within " + std::to_string(max_attempts) + " attempts");
  std::optional<std::vector<double>> w;
  if (g.has_edge_weights()) w = std::move(weights);
  std::optional<Eigen::MatrixXd> f;
  if (g.has_node_features()) f = g.node_features();
  out.graph = Graph(g.num_nodes(), std::move(edges), std::move(w), std::move(f));
  return out;
}

Graph gnm_randomize(const Graph& g, std::uint64_t seed) {
  const std::uint64_t n = g.num_nodes();
  const std::uint64_t total = n * (n - 1) / 2;
  const std::uint64_t m = g.num_edges();
  Rng rng(seed);
  // Floyd's sampling of m distinct pair indices out of `total`.
  std::set<std::uint64_t> chosen;
  for (std::uint64_t j = total - m; j < total; ++j) {
    const std::uint64_t t = rng.uniform_int(0, j);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::uint64_t idx : chosen) {
    // Row-major upper triangle: row u holds n-1-u pairs.
    std::uint64_t u = 0, rem = idx;
    while (rem >= n - 1 - u) {
      rem -= n - 1 - u;
      ++u;
    }
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(u + 1 + rem)});
  }
  std::optional<Eigen::MatrixXd> f;
  if (g.has_node_features()) f = g.node_features();
  return Graph(g.num_nodes(), std::move(edges), std::nullopt, std::move(f));
}

Graph permute_features(const Graph& g, std::uint64_t seed) {
  if (!g.has_node_features()) throw_data("permute_features needs node features");
  Eigen::MatrixXd f = g.node_features();
  Rng rng(seed);
  std::vector<double> row(static_cast<std::size_t>(f.cols()));
  for (Eigen::Index i = 0; i < f.rows(); ++i) {
    for (Eigen::Index c = 0; c < f.cols(); ++c) row[static_cast<std::size_t>(c)] = f(i, c);
    rng.shuffle(std::span<double>(row));
    for (Eigen::Index c = 0; c < f.cols(); ++c) f(i, c) = row[static_cast<std::size_t>(c)];
  }
  std::optional<std::vector<double>> w;
  if (g.has_edge_weights()) w = g.edge_weights();
  return Graph(g.num_nodes(), g.edges(), std::move(w), std::move(f));
}

}  // namespace qpe
