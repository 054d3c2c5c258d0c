#include <benchmark/benchmark.h>

#include <algorithm>
#include <cmath>

#include "triple_couple/coupling.hpp"
#include "triple_couple/factor.hpp"
#include "triple_couple/rng.hpp"

namespace {

using namespace triple_couple;

void BM_ExactCouplingRun(benchmark::State& state) {
  const ModelParams mp{7, 0.3, default_pi(7, 0.3, 0.1, 0.0)};
  const ExactContext ctx(mp, EngineOptions{}, 9);
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_exact_coupling(ctx, RngSpec{9, i++}).failed);
}
BENCHMARK(BM_ExactCouplingRun);

void BM_CertificateRun(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const double p = 0.9 * theoretical_thresholds(n).p_star;
  const ModelParams mp{n, p, default_pi(n, p, 0.1, 0.1)};
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_certificate(mp, RngSpec{10, i++}).failed);
}
BENCHMARK(BM_CertificateRun)->Arg(60)->Arg(150)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
