#include <gtest/gtest.h>

#include <bit>
#include <cmath>

#include "triple_couple/combinatorics.hpp"
#include "triple_couple/coupling.hpp"

using namespace triple_couple;

namespace {

EngineOptions small_options() {
  EngineOptions opt;
  opt.coupler.mode = CountLawMode::kPoisson;
  return opt;
}

// Surjections from six vertices onto k+1 labels, minimizing cut cycle edges.
int partition_brute_force(int k) {
  const auto edges = cycle_edge_set(CleanCycle::make({0, 1, 2}, {3, 4, 5}));
  int best = 100;
  const int parts = k + 1;
  int total = 1;
  for (int i = 0; i < 6; ++i) total *= parts;
  for (int code = 0; code < total; ++code) {
    std::array<int, 6> lab{};
    int c = code;
    std::uint32_t used = 0;
    for (int i = 0; i < 6; ++i) {
      lab[i] = c % parts;
      c /= parts;
      used |= 1u << lab[i];
    }
    if (std::popcount(used) != parts) continue;
    int cut = 0;
    for (const Edge& e : edges) cut += lab[e[0]] != lab[e[1]];
    best = std::min(best, cut);
  }
  return best;
}

// State with one seeded cycle, some confirmed and some refused triangles.
CouplingState make_state(const ExactContext& ctx, bool seeded) {
  const SmallUniverse& u = ctx.universe();
  CouplingState s;
  s.params = ctx.params();
  if (seeded) {
    const CleanCycle c = CleanCycle::make({0, 1, 2}, {3, 4, 5}).canonical();
    s.c1 = {c};
    s.c2 = {c};
    s.c1_edges = u.cycle_edge_mask(u.cycle_index(c));
    for (const Triple& t : c.hyperedges()) s.c2_triples.set(u.triple_index(t));
  }
  s.r = s.c1_edges;
  return s;
}

void refuse(const ExactContext& ctx, CouplingState& s, Triple t) {
  const int r = ctx.universe().triple_index(t);
  s.refused.push_back(r);
  s.absent.set(r);
}

void confirm(const ExactContext& ctx, CouplingState& s, Triple t) {
  const int r = ctx.universe().triple_index(t);
  s.present.set(r);
  s.r |= ctx.universe().triangle_mask(r);
}

// P(triangle j in G | state) by summing over every edge set.
double brute_pi(const ExactContext& ctx, const CouplingState& s, int j) {
  const std::size_t n = ctx.params().n;
  const double p = ctx.params().p;
  PairIndex idx(n);
  std::vector<std::uint64_t> cycle_masks;
  for (const CleanCycle& c : all_clean_cycles(n)) {
    std::uint64_t m = 0;
    for (const Edge& e : cycle_edge_set(c)) m |= idx.bit(e[0], e[1]);
    cycle_masks.push_back(m);
  }
  std::vector<std::uint64_t> refused;
  for (int i : s.refused) refused.push_back(idx.triangle_mask(triple_unrank(n, i)));
  const std::uint64_t ej = idx.triangle_mask(triple_unrank(n, j));
  const std::size_t m = idx.num_pairs();
  double num = 0, den = 0;
  for (std::uint64_t g = 0; g < (std::uint64_t{1} << m); ++g) {
    if ((s.r & ~g) != 0) continue;
    bool ok = true;
    for (auto r : refused) ok &= (r & ~g) != 0;
    if (!ok) continue;
    std::size_t cyc = 0;
    for (auto c : cycle_masks) cyc += (c & ~g) == 0;
    if (cyc != s.c1.size()) continue;
    const int k = std::popcount(g);
    const double w = std::pow(p, k) * std::pow(1 - p, static_cast<int>(m) - k);
    den += w;
    if ((ej & ~g) == 0) num += w;
  }
  return num / den;
}

// P(hyperedge j in H | state) by summing over every triple set (n = 6).
double brute_pi_prime(const ExactContext& ctx, const CouplingState& s, int j) {
  const std::size_t n = ctx.params().n;
  const double pi = ctx.params().pi;
  const int t = static_cast<int>(binomial(n, 3));
  std::vector<std::uint32_t> cycles;
  for (const CleanCycle& c : all_clean_cycles(n)) {
    std::uint32_t m = 0;
    for (const Triple& h : c.hyperedges()) m |= 1u << triple_rank(n, h);
    cycles.push_back(m);
  }
  std::uint32_t fixed = 0, banned = 0;
  for (int i = 0; i < t; ++i) {
    if (s.present.test(i) || s.c2_triples.test(i)) fixed |= 1u << i;
    if (s.absent.test(i)) banned |= 1u << i;
  }
  double num = 0, den = 0;
  for (std::uint32_t h = 0; h < (1u << t); ++h) {
    if ((fixed & ~h) || (h & banned)) continue;
    std::size_t cyc = 0;
    for (auto c : cycles) cyc += (c & ~h) == 0;
    if (cyc != s.c2.size()) continue;
    const int k = std::popcount(h & ~fixed);
    const int free = t - std::popcount(fixed | banned);
    const double w = std::pow(pi, k) * std::pow(1 - pi, free - k);
    den += w;
    if (h >> j & 1) num += w;
  }
  return num / den;
}

}  // namespace

TEST(Coupling, PartitionMinimaMatchBruteForce) {
  const int expected[] = {2, 4, 6, 8};
  for (int k = 1; k <= 4; ++k) {
    EXPECT_EQ(partition_edge_minimum(k), expected[k - 1]);
    EXPECT_EQ(partition_edge_minimum(k), partition_brute_force(k));
  }
  EXPECT_THROW(partition_edge_minimum(0), std::invalid_argument);
  EXPECT_THROW(partition_edge_minimum(5), std::invalid_argument);
}

TEST(Coupling, VerifyEmbedding) {
  const Graph g(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}});
  EXPECT_TRUE(verify_embedding(g, Hypergraph3(5, {{0, 1, 2}})));
  EXPECT_FALSE(verify_embedding(g, Hypergraph3(5, {{1, 2, 3}})));
  EXPECT_FALSE(verify_embedding(g, Hypergraph3(6)));
  EXPECT_TRUE(verify_embedding(g, Hypergraph3(5)));
}

TEST(Coupling, QTermAndComputeQ) {
  const ExactContext ctx(ModelParams{6, 0.4, 0.01}, small_options(), 1);
  const SmallUniverse& u = ctx.universe();
  CouplingState s = make_state(ctx, false);
  const int j = u.triple_index({0, 1, 2});
  const double p = 0.4;
  const std::uint64_t ej = u.triangle_mask(j);
  auto cycle_part = [&](std::uint64_t r) {
    double q = 0;
    for (const CleanCycle& c : all_clean_cycles(6)) {
      std::uint64_t m = 0;
      for (const Edge& e : cycle_edge_set(c)) m |= u.pairs().bit(e[0], e[1]);
      if (m & ej) q += std::pow(p, std::popcount(m & ~(ej | r)));
    }
    return q;
  };
  EXPECT_NEAR(compute_Q(ctx, s, j), cycle_part(0), 1e-12);
  // A refused triangle sharing edge 01 adds p^2, or p once edge 03 is known.
  refuse(ctx, s, {0, 1, 3});
  EXPECT_NEAR(compute_Q(ctx, s, j), cycle_part(0) + p * p, 1e-12);
  s.r |= u.pairs().bit(0, 3);
  EXPECT_NEAR(compute_Q(ctx, s, j), cycle_part(s.r) + p, 1e-12);
  EXPECT_FALSE(is_dangerous(ctx, s, j));
  s.r |= u.pairs().bit(1, 3);
  EXPECT_TRUE(is_dangerous(ctx, s, j));
  EXPECT_EQ(q_term(0b111, 0b001, 0b010, 0.5), 0.5);
}

TEST(Coupling, ExactPiMatchesBruteForce) {
  const ExactContext ctx(ModelParams{6, 0.45, 0.01}, small_options(), 2);
  for (bool seeded : {false, true}) {
    CouplingState s = make_state(ctx, seeded);
    const int j1 = ctx.universe().triple_index({0, 1, 2});
    const int j2 = ctx.universe().triple_index({1, 3, 5});
    EXPECT_NEAR(exact_pi(ctx, s, j1), brute_pi(ctx, s, j1), 1e-12);
    EXPECT_NEAR(exact_pi(ctx, s, j2), brute_pi(ctx, s, j2), 1e-12);
    refuse(ctx, s, {0, 1, 4});
    refuse(ctx, s, {2, 4, 5});
    if (!seeded) confirm(ctx, s, {0, 3, 5});
    for (Triple t : {Triple{0, 1, 2}, Triple{1, 3, 5}, Triple{0, 4, 5}, Triple{2, 3, 4}}) {
      const int j = ctx.universe().triple_index(t);
      EXPECT_NEAR(exact_pi(ctx, s, j), brute_pi(ctx, s, j), 1e-12) << seeded;
    }
  }
}

TEST(Coupling, ExactPiWithManyRefusedUsesDirectSum) {
  EngineOptions opt = small_options();
  opt.max_inclusion_exclusion = 4;
  const ExactContext ctx(ModelParams{6, 0.6, 0.01}, opt, 3);
  CouplingState s = make_state(ctx, false);
  // More refused triangles than the inclusion-exclusion limit.
  Triple t{0, 1, 2};
  int count = 0;
  do {
    if (t[0] == 0 && t[1] == 1) continue;
    refuse(ctx, s, t);
    ++count;
  } while (next_triple(6, t) && count < 8);
  ASSERT_GT(s.refused.size(), 4u);
  const int j = ctx.universe().triple_index({0, 1, 5});
  EXPECT_NEAR(exact_pi(ctx, s, j), brute_pi(ctx, s, j), 1e-12);
}

TEST(Coupling, ProductFormPiPrimeAgainstBruteForce) {
  const ExactContext ctx(ModelParams{6, 0.5, 0.05}, small_options(), 4);
  const SmallUniverse& u = ctx.universe();
  CouplingState s = make_state(ctx, false);
  const int j = u.triple_index({0, 1, 3});
  // Nothing decided: dependence only through overlapping cycles.
  const double exact = brute_pi_prime(ctx, s, j);
  EXPECT_LE(product_form_pi_prime(ctx, s, j), 0.05);
  EXPECT_NEAR(product_form_pi_prime(ctx, s, j), exact, 0.02 * exact);
  // Two other hyperedges of a cycle through j present: j is forbidden.
  const CleanCycle c = CleanCycle::make({0, 1, 2}, {3, 4, 5});
  const auto hs = c.hyperedges();
  s.present.set(u.triple_index(hs[1]));
  s.present.set(u.triple_index(hs[2]));
  EXPECT_EQ(product_form_pi_prime(ctx, s, j), 0.0);
  EXPECT_EQ(brute_pi_prime(ctx, s, j), 0.0);
  // Cycle broken by an absent hyperedge: only other cycles matter.
  s.present = TripleSet{};
  s.absent.set(u.triple_index(hs[1]));
  EXPECT_NEAR(product_form_pi_prime(ctx, s, j), brute_pi_prime(ctx, s, j), 0.02 * exact);
}

TEST(Coupling, MonteCarloOraclesAgreeWithExact) {
  const ExactContext ctx(ModelParams{6, 0.5, 0.05}, small_options(), 5);
  const SmallUniverse& u = ctx.universe();
  CouplingState s = make_state(ctx, false);
  refuse(ctx, s, {0, 1, 4});
  confirm(ctx, s, {2, 3, 5});
  const int j = u.triple_index({0, 2, 3});
  Rng rng(RngSpec{83, 0});
  const OracleEstimate pi_est = oracle_pi(ctx, s, j, 20000, rng);
  const double pi_true = brute_pi(ctx, s, j);
  EXPECT_NEAR(pi_est.mean, pi_true, 4 * pi_est.stderr_ + 1e-9);
  EXPECT_LE(pi_est.ci_low(), pi_est.mean);

  const int j2 = u.triple_index({0, 1, 3});
  const OracleEstimate pp = oracle_pi_prime(ctx, s, j2, 20000, rng);
  const double pp_true = brute_pi_prime(ctx, s, j2);
  EXPECT_NEAR(pp.mean, pp_true, 4 * pp.stderr_ + 1e-9);
  EXPECT_LE(pp.mean, 0.05 + 1e-15);
}

TEST(Coupling, SeededStateOracles) {
  const ExactContext ctx(ModelParams{6, 0.5, 0.05}, small_options(), 6);
  CouplingState s = make_state(ctx, true);
  const int j = ctx.universe().triple_index({0, 1, 2});
  // The middle triangle of the seeded cycle is already inside R.
  EXPECT_EQ(exact_pi(ctx, s, j), 1.0);
  const int j2 = ctx.universe().triple_index({1, 2, 3});
  EXPECT_NEAR(exact_pi(ctx, s, j2), brute_pi(ctx, s, j2), 1e-12);
  EXPECT_NEAR(product_form_pi_prime(ctx, s, j2), brute_pi_prime(ctx, s, j2), 0.05 * 0.05);
}

TEST(Coupling, RunsAreDeterministicAndEmbed) {
  EngineOptions opt;
  opt.coupler.tabulation_samples = 20000;
  const ExactContext ctx(ModelParams{7, 0.3, default_pi(7, 0.3, 0.1, 0.1)}, opt, 7);
  std::size_t ok_runs = 0;
  for (std::uint64_t t = 0; t < 300; ++t) {
    const CouplingOutcome a = run_exact_coupling(ctx, RngSpec{7, t});
    const CouplingOutcome b = run_exact_coupling(ctx, RngSpec{7, t});
    ASSERT_EQ(a.g, b.g);
    ASSERT_EQ(a.h, b.h);
    ASSERT_EQ(a.failed, b.failed);
    ASSERT_TRUE(a.usable);
    if (!a.failed) {
      ++ok_runs;
      ASSERT_TRUE(a.embedding_ok) << t;
    }
    if (a.seeding_failed) {
      EXPECT_NE(a.fail_reason, FailReason::kNone);
    }
  }
  EXPECT_GT(ok_runs, 250u);
}

TEST(Coupling, StepApi) {
  EngineOptions opt;
  opt.coupler.mode = CountLawMode::kPoisson;
  const ExactContext ctx(ModelParams{7, 0.3, 0.005}, opt, 8);
  ExactCoupling run(ctx, RngSpec{8, 1});
  int steps = 0;
  while (!run.done()) {
    const int before = run.state().j;
    const StepRecord rec = run.step();
    EXPECT_EQ(rec.j, before);
    if (!rec.skipped) {
      EXPECT_GE(rec.probs.pi_j, 0.0);
      EXPECT_LE(rec.probs.pi_j, 1.0);
      EXPECT_LE(rec.probs.pi_prime_j, 0.005 + 1e-15);
      EXPECT_GE(rec.probs.q_j, 0.0);
    }
    ++steps;
  }
  if (run.seeding_ok()) {
    EXPECT_EQ(steps, 35);
  }
  const CouplingOutcome out = run.finish();
  EXPECT_EQ(out.h.num_vertices(), 7u);
}

TEST(Coupling, FailReasonNames) {
  EXPECT_EQ(to_string(FailReason::kNone), "none");
  EXPECT_EQ(to_string(FailReason::kPiPrimeExceedsPi), "pi_prime_exceeds_pi");
  EXPECT_EQ(to_string(FailReason::kLambdaOverBudget), "lambda_over_budget");
}

TEST(Coupling, ContextRejectsLargeN) {
  EXPECT_THROW(ExactContext(ModelParams{12, 0.3, 0.001}, EngineOptions{}, 1), std::invalid_argument);
  EngineOptions opt = small_options();
  opt.pi_oracle = PiOracle::kEnumeration;
  EXPECT_THROW(ExactContext(ModelParams{8, 0.3, 0.001}, opt, 1), std::invalid_argument);
}
