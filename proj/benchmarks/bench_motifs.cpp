#include <benchmark/benchmark.h>

#include <algorithm>
#include <cmath>

#include "triple_couple/motifs.hpp"
#include "triple_couple/rng.hpp"
#include "triple_couple/sampling.hpp"

namespace {

using namespace triple_couple;

void BM_CleanCyclesInGraph(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  // Roughly one expected cycle per graph.
  const double p = 1.6 * std::pow(static_cast<double>(n), -2.0 / 3.0);
  const Graph g = sample_gnp(n, p, RngSpec{1, 0});
  for (auto _ : state) benchmark::DoNotOptimize(clean_cycles_in_graph(g).size());
  state.counters["edges"] = static_cast<double>(g.num_edges());
}
BENCHMARK(BM_CleanCyclesInGraph)->Arg(30)->Arg(100)->Arg(300);

void BM_CleanCyclesInHypergraph(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const double pi = 3.0 / (static_cast<double>(n) * n);
  const Hypergraph3 h = sample_h3(n, pi, RngSpec{2, 0});
  for (auto _ : state) benchmark::DoNotOptimize(count_clean_cycles(h));
  state.counters["hyperedges"] = static_cast<double>(h.num_hyperedges());
}
BENCHMARK(BM_CleanCyclesInHypergraph)->Arg(100)->Arg(300)->Arg(1000);

void BM_TriangleLemma(benchmark::State& state) {
  const Hypergraph3 h = sample_h3(9, 0.05, RngSpec{3, 0});
  for (auto _ : state) benchmark::DoNotOptimize(check_triangle_lemma(h).size());
}
BENCHMARK(BM_TriangleLemma);

}  // namespace

BENCHMARK_MAIN();
