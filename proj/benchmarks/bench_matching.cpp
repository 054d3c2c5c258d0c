#include <benchmark/benchmark.h>

#include <algorithm>
#include <cmath>

#include "triple_couple/factor.hpp"
#include "triple_couple/rng.hpp"
#include "triple_couple/sampling.hpp"

namespace {

using namespace triple_couple;

// Graphs at a multiple of the triangle-factor threshold.
void BM_TriangleFactor(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const double factor = static_cast<double>(state.range(1)) / 10.0;
  const double p = std::min(1.0, factor * theoretical_thresholds(n).p_star);
  const Graph g = sample_gnp(n, p, RngSpec{7, n});
  for (auto _ : state) benchmark::DoNotOptimize(triangle_factor(g).nodes);
}
BENCHMARK(BM_TriangleFactor)->Args({60, 15})->Args({120, 15})->Args({120, 30})->Args({300, 20});

void BM_PerfectMatching3(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const double pi = 2.0 * theoretical_thresholds(n).pi_star;
  const Hypergraph3 h = sample_h3(n, pi, RngSpec{8, n});
  for (auto _ : state) benchmark::DoNotOptimize(perfect_matching_3uniform(h).nodes);
}
BENCHMARK(BM_PerfectMatching3)->Arg(30)->Arg(60)->Arg(90);

}  // namespace

BENCHMARK_MAIN();
