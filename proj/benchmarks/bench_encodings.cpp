#include "qpe/classical_pe.hpp"
#include "qpe/gdwl.hpp"
#include "qpe/ground_state.hpp"
#include "qpe/ising_closed_form.hpp"
#include "qpe/quantum_sim.hpp"
#include "qpe/random.hpp"
#include "qpe/srg_fixtures.hpp"
#include "qpe/subspace_walks.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

using namespace qpe;

Graph gnp(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (rng.uniform() < p) pairs.emplace_back(u, v);
  return Graph::from_pairs(n, pairs);
}

void BM_Rrwp(benchmark::State& state) {
  const Graph g = gnp(static_cast<std::size_t>(state.range(0)), 0.1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(rrwp(g, 21));
}
BENCHMARK(BM_Rrwp)->Arg(50)->Arg(200);

void BM_ClosedFormCovariance(benchmark::State& state) {
  const Graph g = gnp(static_cast<std::size_t>(state.range(0)), 0.05, 2);
  const IsingPEParams p{0.4, 1.3, 0.2};
  for (auto _ : state) benchmark::DoNotOptimize(closed_form_covariance(g, p));
}
BENCHMARK(BM_ClosedFormCovariance)->Arg(50)->Arg(200);

void BM_StatevectorCovariance(benchmark::State& state) {
  const Graph g = gnp(static_cast<std::size_t>(state.range(0)), 0.4, 3);
  for (auto _ : state) benchmark::DoNotOptimize(occupation_covariance_bruteforce(g, 0.4, 1.3, 0.2));
}
BENCHMARK(BM_StatevectorCovariance)->Arg(8)->Arg(12)->Arg(16);

void BM_TwoWalkerTensor(benchmark::State& state) {
  const Graph g = gnp(static_cast<std::size_t>(state.range(0)), 0.2, 4);
  const std::vector<double> times = sample_times(20, 0.1, 3.14159, 0);
  for (auto _ : state)
    benchmark::DoNotOptimize(qrw_pe_tensor(g, 2, times, InitialDistribution::of(InitialKind::uniform_edges)));
}
BENCHMARK(BM_TwoWalkerTensor)->Arg(12)->Arg(24);

void BM_QirwReturnAmplitudes(benchmark::State& state) {
  const Graph g = shrikhande_graph();
  const auto K = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(qirw_discrete(g, K, InitialDistribution::of(InitialKind::all_localized)));
}
BENCHMARK(BM_QirwReturnAmplitudes)->Arg(100)->Arg(1000);

void BM_GdwlSrgPair(benchmark::State& state) {
  const Graph a = rook_4x4_graph(), b = shrikhande_graph();
  for (auto _ : state) benchmark::DoNotOptimize(gdwl_distinguish(a, b, DistanceProvider::rrwp(21)));
}
BENCHMARK(BM_GdwlSrgPair);

void BM_GroundStateManifold(benchmark::State& state) {
  const Graph g = gnp(static_cast<std::size_t>(state.range(0)), 0.15, 5);
  GroundStateOptions opt;
  opt.max_nodes = 200;
  for (auto _ : state) benchmark::DoNotOptimize(ground_state_manifold(g, default_delta, opt));
}
BENCHMARK(BM_GroundStateManifold)->Arg(20)->Arg(40);

}  // namespace

BENCHMARK_MAIN();
