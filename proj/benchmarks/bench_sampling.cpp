#include <benchmark/benchmark.h>

#include <algorithm>
#include <cmath>

#include "triple_couple/rng.hpp"
#include "triple_couple/sampling.hpp"

namespace {

using namespace triple_couple;

void BM_SampleGnp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(RngSpec{4, 0});
  for (auto _ : state) benchmark::DoNotOptimize(sample_gnp(n, 0.05, rng).num_edges());
}
BENCHMARK(BM_SampleGnp)->Arg(100)->Arg(300)->Arg(1000);

void BM_SampleH3(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const double pi = 1.0 / n;
  Rng rng(RngSpec{5, 0});
  for (auto _ : state) benchmark::DoNotOptimize(sample_h3(n, pi, rng).num_hyperedges());
}
BENCHMARK(BM_SampleH3)->Arg(100)->Arg(300)->Arg(1000);

void BM_Shadow(benchmark::State& state) {
  const Hypergraph3 h = sample_h3(300, 1e-4, RngSpec{6, 0});
  for (auto _ : state) benchmark::DoNotOptimize(shadow(h).num_edges());
}
BENCHMARK(BM_Shadow);

}  // namespace

BENCHMARK_MAIN();
