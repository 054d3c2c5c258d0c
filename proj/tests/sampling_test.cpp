#include <gtest/gtest.h>

#include "test_util.hpp"
#include "triple_couple/combinatorics.hpp"
#include "triple_couple/errors.hpp"
#include "triple_couple/motifs.hpp"
#include "triple_couple/sampling.hpp"

using namespace triple_couple;

TEST(Sampling, GnpDeterministic) {
  EXPECT_EQ(sample_gnp(50, 0.1, RngSpec{3, 1}), sample_gnp(50, 0.1, RngSpec{3, 1}));
  EXPECT_FALSE(sample_gnp(50, 0.1, RngSpec{3, 1}) == sample_gnp(50, 0.1, RngSpec{3, 2}));
}

TEST(Sampling, GnpExtremes) {
  EXPECT_EQ(sample_gnp(10, 0.0, RngSpec{}).num_edges(), 0u);
  EXPECT_EQ(sample_gnp(10, 1.0, RngSpec{}).num_edges(), 45u);
  EXPECT_EQ(sample_h3(8, 1.0, RngSpec{}).num_hyperedges(), 56u);
  EXPECT_EQ(sample_h3(8, 0.0, RngSpec{}).num_hyperedges(), 0u);
}

TEST(Sampling, GnpEdgeCountIsBinomial) {
  const std::size_t n = 200;
  const double p = 0.05;
  std::uint64_t total = 0;
  for (std::uint64_t s = 0; s < 20; ++s) total += sample_gnp(n, p, RngSpec{17, s}).num_edges();
  EXPECT_TRUE(within_binomial(total, 20 * binomial(n, 2), p));
}

TEST(Sampling, H3TripleCountIsBinomial) {
  const std::size_t n = 40;
  const double pi = 0.01;
  std::uint64_t total = 0;
  for (std::uint64_t s = 0; s < 20; ++s) total += sample_h3(n, pi, RngSpec{19, s}).num_hyperedges();
  EXPECT_TRUE(within_binomial(total, 20 * binomial(n, 3), pi));
}

TEST(Sampling, EachEdgeMarginal) {
  // Per-edge frequency on a small graph, pooled.
  const std::size_t n = 6;
  std::vector<std::uint64_t> hits(binomial(n, 2), 0);
  const int runs = 20000;
  for (int s = 0; s < runs; ++s) {
    const Graph g = sample_gnp(n, 0.3, RngSpec{23, static_cast<std::uint64_t>(s)});
    for (const Edge& e : g.edges()) ++hits[pair_rank(n, e[0], e[1])];
  }
  for (auto h : hits) EXPECT_TRUE(within_binomial(h, runs, 0.3));
}

TEST(Sampling, ShadowHasTriangleEdges) {
  Hypergraph3 h(6, {{0, 1, 2}, {2, 3, 4}});
  const Graph g = shadow(h);
  EXPECT_EQ(g.num_edges(), 6u);
  EXPECT_TRUE(g.contains_triangle(Triple{2, 3, 4}));
}

TEST(Sampling, ConditionalRespectsAllowedCycles) {
  const CleanCycle c = CleanCycle::make({0, 1, 2}, {3, 4, 5}).canonical();
  const auto hs = c.hyperedges();
  std::vector<Triple> forced(hs.begin(), hs.end());
  Rng rng(RngSpec{29, 0});
  ConditionalOptions opt;
  opt.excluded = {Triple{6, 7, 8}};
  for (int i = 0; i < 50; ++i) {
    const auto s = sample_h3_conditional(9, 0.15, forced, {c}, rng, opt);
    const auto cycles = clean_cycles_in_hypergraph(s.h);
    ASSERT_EQ(cycles.size(), 1u);
    EXPECT_EQ(cycles[0], c);
    EXPECT_FALSE(s.h.contains(Triple{6, 7, 8}));
    for (const Triple& t : forced) EXPECT_TRUE(s.h.contains(t));
  }
}

TEST(Sampling, ConditionalRejectsInconsistentInput) {
  const CleanCycle c = CleanCycle::make({0, 1, 2}, {3, 4, 5}).canonical();
  const auto hs = c.hyperedges();
  std::vector<Triple> forced(hs.begin(), hs.end());
  Rng rng(RngSpec{1, 0});
  EXPECT_THROW(sample_h3_conditional(6, 0.1, forced, {}, rng), std::invalid_argument);
  ConditionalOptions opt;
  opt.excluded = {forced[0]};
  EXPECT_THROW(sample_h3_conditional(6, 0.1, forced, {c}, rng, opt), std::invalid_argument);
}

TEST(Sampling, ConditionalBudget) {
  // With pi = 1 every draw is complete, and K^(3)_6 has 120 clean cycles.
  Rng rng(RngSpec{1, 0});
  ConditionalOptions opt;
  opt.rejection_budget = 10;
  EXPECT_THROW(sample_h3_conditional(6, 1.0, {}, {}, rng, opt), BudgetExceeded);
}
