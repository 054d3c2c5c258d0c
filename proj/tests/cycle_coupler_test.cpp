#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "test_util.hpp"
#include "triple_couple/combinatorics.hpp"
#include "triple_couple/cycle_coupler.hpp"
#include "triple_couple/errors.hpp"

using namespace triple_couple;

namespace {

// Direct summation of |pmf1 - pmf2| / 2 up to k = 200 with recursive pmfs.
double tv_by_summation(double l1, double l2) {
  double a = std::exp(-l1), b = std::exp(-l2), total = std::abs(a - b);
  for (int k = 1; k <= 200; ++k) {
    a *= l1 / k;
    b *= l2 / k;
    total += std::abs(a - b);
  }
  return total / 2;
}

}  // namespace

TEST(CycleCoupler, ExpectedCounts) {
  const ModelParams mp{30, 0.13, 0.002};
  const auto m = expected_counts(mp);
  EXPECT_NEAR(m.lambda1, 120 * binomial_real(30, 6) * std::pow(0.13, 9), 1e-12);
  EXPECT_NEAR(m.lambda2, 120 * binomial_real(30, 6) * std::pow(0.002, 3), 1e-15);
  const auto small = expected_counts(ModelParams{5, 0.5, 0.1});
  EXPECT_EQ(small.lambda1, 0.0);
  EXPECT_EQ(small.lambda2, 0.0);
}

TEST(CycleCoupler, PoissonTvMatchesSummation) {
  const std::pair<double, double> cases[] = {{1, 1}, {0.5, 1.5}, {2, 2.3}, {0, 1}, {10, 12}, {0.01, 0.02}};
  for (auto [a, b] : cases) EXPECT_NEAR(tv_distance_poisson(a, b), tv_by_summation(a, b), 1e-12) << a << " " << b;
  EXPECT_EQ(tv_distance_poisson(3, 3), 0.0);
  EXPECT_NEAR(tv_distance_poisson(0, 2), 1 - std::exp(-2.0), 1e-13);
  EXPECT_THROW(tv_distance_poisson(-1, 1), std::invalid_argument);
}

TEST(CycleCoupler, EmpiricalTv) {
  EXPECT_EQ(tv_distance_empirical({5, 5}, {1, 1}), 0.0);
  EXPECT_NEAR(tv_distance_empirical({10}, {0, 10}), 1.0, 1e-15);
  EXPECT_NEAR(tv_distance_empirical({3, 1}, {1, 1, 2}), 0.5, 1e-15);
  EXPECT_THROW(tv_distance_empirical({}, {1}), std::invalid_argument);
}

TEST(CycleCoupler, MaximalCouplingMismatchEqualsTv) {
  const CountLaw a = CountLaw::poisson(1.0), b = CountLaw::poisson(1.6);
  const double tv = tv_distance(a, b);
  EXPECT_NEAR(tv, tv_distance_poisson(1.0, 1.6), 1e-9);
  Rng rng(RngSpec{61, 0});
  const int draws = 40000;
  std::uint64_t mismatch = 0;
  std::vector<std::uint64_t> h1(40, 0), h2(40, 0);
  for (int i = 0; i < draws; ++i) {
    const auto [x, y] = sample_maximal_coupling(a, b, rng);
    mismatch += x != y;
    ++h1[std::min<std::size_t>(x, 39)];
    ++h2[std::min<std::size_t>(y, 39)];
  }
  EXPECT_TRUE(within_binomial(mismatch, draws, tv));
  // Marginals are the two laws.
  for (std::size_t k = 0; k < 6; ++k) {
    EXPECT_TRUE(within_binomial(h1[k], draws, a.mass(k))) << k;
    EXPECT_TRUE(within_binomial(h2[k], draws, b.mass(k))) << k;
  }
}

TEST(CycleCoupler, IdenticalLawsNeverMismatch) {
  const CountLaw a = CountLaw::poisson(2.0);
  Rng rng(RngSpec{67, 0});
  for (int i = 0; i < 1000; ++i) {
    const auto [x, y] = sample_maximal_coupling(a, a, rng);
    ASSERT_EQ(x, y);
  }
}

TEST(CycleCoupler, HistogramLaw) {
  const CountLaw law = CountLaw::from_histogram({2, 6, 2});
  EXPECT_NEAR(law.mass(1), 0.6, 1e-15);
  EXPECT_EQ(law.mass(7), 0.0);
}

TEST(CycleCoupler, GraphHistogramMeanMatchesLambda) {
  // n = 7: the fast mask path. E[X] = 120 C(7,6) p^9 exactly.
  const double p = 0.5;
  const Histogram h = graph_cycle_histogram(7, p, 20000, RngSpec{71, 0});
  double sum = 0, n = 0, sq = 0;
  for (std::size_t k = 0; k < h.size(); ++k) {
    sum += static_cast<double>(k * h[k]);
    sq += static_cast<double>(k * k * h[k]);
    n += static_cast<double>(h[k]);
  }
  const double mean = sum / n, sd = std::sqrt(sq / n - mean * mean);
  EXPECT_NEAR(mean, 840 * std::pow(p, 9), 4 * sd / std::sqrt(n));
}

TEST(CycleCoupler, BudgetAndSeeding) {
  EXPECT_THROW(CycleCoupler(ModelParams{300, 0.0452, 2e-5}, CouplerOptions{}), BudgetExceeded);
  const ModelParams mp{60, 0.1, 0.0008};
  const CycleCoupler c(mp, CouplerOptions{});
  Rng rng(RngSpec{73, 0});
  for (int i = 0; i < 200; ++i) {
    const CoupledCollections col = c.sample(rng);
    if (!col.ok()) continue;
    EXPECT_EQ(col.c1.size(), col.x1);
    EXPECT_EQ(col.c2.size(), col.x2);
    EXPECT_EQ(col.c1, col.c2);
    std::set<Vertex> used;
    for (const CleanCycle& cyc : col.c1)
      for (Vertex v : cyc.vertices()) EXPECT_TRUE(used.insert(v).second);
  }
}

TEST(CycleCoupler, UniformDisjointImpossible) {
  const CycleCoupler c(ModelParams{7, 0.3, 0.005}, CouplerOptions{});
  Rng rng(RngSpec{79, 0});
  EXPECT_FALSE(c.uniform_disjoint(2, rng).second);
  EXPECT_TRUE(c.uniform_disjoint(1, rng).second);
  EXPECT_TRUE(c.uniform_disjoint(0, rng).second);
}
