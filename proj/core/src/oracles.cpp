#include <bit>
#include <cmath>

#include "triple_couple/coupling.hpp"
#include "triple_couple/errors.hpp"

namespace triple_couple {

namespace {

OracleEstimate summarize(double sum, double sum_sq, std::uint64_t n, std::uint64_t rejections) {
  OracleEstimate est;
  est.samples = n;
  est.rejections = rejections;
  if (n == 0) return est;
  est.mean = sum / static_cast<double>(n);
  if (n > 1) {
    const double var = std::max(0.0, (sum_sq - sum * est.mean) / static_cast<double>(n - 1));
    est.stderr_ = std::sqrt(var / static_cast<double>(n));
  }
  return est;
}

bool graph_consistent(const ExactContext& ctx, const CouplingState& state,
                      const std::vector<std::uint64_t>& refused, std::uint64_t mask) {
  for (std::uint64_t r : refused)
    if ((r & ~mask) == 0) return false;
  return ctx.count_graph_cycles(mask) == static_cast<int>(state.c1.size());
}

}  // namespace

OracleEstimate oracle_pi(const ExactContext& ctx, const CouplingState& state, int j,
                         std::uint64_t samples, Rng& rng) {
  const SmallUniverse& u = ctx.universe();
  const double p = ctx.params().p;
  const std::uint64_t budget = ctx.options().rejection_budget;
  std::vector<std::uint64_t> refused;
  for (int i : state.refused) refused.push_back(u.triangle_mask(i));

  const std::uint64_t ej = u.triangle_mask(j);
  const std::uint64_t open = ej & ~state.r;
  const int k = std::popcount(open);

  double sum = 0.0, sum_sq = 0.0;
  std::uint64_t tries = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    std::uint64_t mask = 0;
    for (;;) {
      if (++tries > budget) throw BudgetExceeded("oracle_pi rejection budget");
      mask = state.r;
      for (std::size_t e = 0; e < u.num_edges(); ++e)
        if (!((mask >> e) & 1) && rng.bernoulli(p)) mask |= std::uint64_t{1} << e;
      if (graph_consistent(ctx, state, refused, mask)) break;
    }
    // Average the exact conditional probability of the triangle over the
    // assignments of its open edges, holding the rest of the sample fixed.
    double total = 0.0, hit = 0.0;
    std::uint64_t sub = 0;
    do {
      const std::uint64_t cand = (mask & ~open) | sub;
      if (graph_consistent(ctx, state, refused, cand)) {
        const int on = std::popcount(sub);
        const double w = std::pow(p, on) * std::pow(1.0 - p, k - on);
        total += w;
        if (sub == open) hit += w;
      }
      sub = (sub - open) & open;
    } while (sub != 0);
    const double v = total > 0.0 ? hit / total : 0.0;
    sum += v;
    sum_sq += v * v;
  }
  return summarize(sum, sum_sq, samples, tries - samples);
}

OracleEstimate oracle_pi_prime(const ExactContext& ctx, const CouplingState& state, int j,
                               std::uint64_t samples, Rng& rng) {
  const SmallUniverse& u = ctx.universe();
  const double pi = ctx.params().pi;
  const std::uint64_t budget = ctx.options().rejection_budget;
  const int target = static_cast<int>(state.c2.size());
  const int triples = static_cast<int>(u.num_triples());

  TripleSet fixed = state.present;
  for (std::size_t w = 0; w < fixed.words.size(); ++w) fixed.words[w] |= state.c2_triples.words[w];

  double sum = 0.0, sum_sq = 0.0;
  std::uint64_t tries = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    TripleSet h;
    for (;;) {
      if (++tries > budget) throw BudgetExceeded("oracle_pi_prime rejection budget");
      h = fixed;
      for (int t = 0; t < triples; ++t)
        if (!fixed.test(t) && !state.absent.test(t) && rng.bernoulli(pi)) h.set(t);
      if (u.count_cycles_in_hypergraph(h) == target) break;
    }
    // Given everything except triple j, j is present with probability pi
    // when adding it creates no new clean cycle, and 0 otherwise.
    h.set(j);
    const double v = u.count_cycles_in_hypergraph(h) == target ? pi : 0.0;
    sum += v;
    sum_sq += v * v;
  }
  return summarize(sum, sum_sq, samples, tries - samples);
}

}  // namespace triple_couple
