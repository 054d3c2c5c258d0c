#include <gtest/gtest.h>

#include <cmath>

#include "triple_couple/rng.hpp"
#include "triple_couple/sweep.hpp"

using namespace triple_couple;

TEST(Sweep, ExtremeGrids) {
  SweepSpec spec;
  spec.n_values = {9, 12};
  spec.grid = {1.0};
  spec.trials = 5;
  SweepResult r = run_sweep(spec);
  ASSERT_EQ(r.points.size(), 2u);
  for (const auto& pt : r.points) EXPECT_EQ(pt.successes, pt.trials);

  spec.grid = {0.0};
  r = run_sweep(spec);
  for (const auto& pt : r.points) EXPECT_EQ(pt.successes, 0u);
  for (const auto& fit : r.fits) EXPECT_FALSE(fit.usable);

  spec.model = SweepModel::kHypergraph;
  spec.grid = {1.0};
  r = run_sweep(spec);
  for (const auto& pt : r.points) EXPECT_EQ(pt.successes, pt.trials);
}

TEST(Sweep, Validation) {
  SweepSpec spec;
  spec.n_values = {10};
  spec.grid = {0.1};
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec.n_values = {9};
  spec.grid = {0.2, 0.1};
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec.grid = {0.1, 1.2};
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec.grid = {0.1, 0.2};
  spec.trials = 0;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec.trials = 1;
  EXPECT_NO_THROW(spec.validate());
}

TEST(Sweep, DeterministicAndJobIndependent) {
  SweepSpec spec;
  spec.n_values = {15};
  spec.grid = {0.2, 0.4, 0.6};
  spec.trials = 20;
  spec.master_seed = 5;
  const SweepResult a = run_sweep(spec);
  spec.jobs = 3;
  const SweepResult b = run_sweep(spec);
  ASSERT_EQ(a.points.size(), b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) EXPECT_EQ(a.points[i].successes, b.points[i].successes);
}

TEST(Sweep, FitRecoversSyntheticCrossing) {
  // Binomial data from a known logistic curve in ln x.
  const double center = 0.05, slope = 4.0;
  Rng rng(RngSpec{109, 0});
  std::vector<SweepPoint> column;
  for (int i = 0; i < 12; ++i) {
    SweepPoint pt;
    pt.n = 30;
    pt.x = center * std::exp(-1.0 + 2.0 * i / 11.0);
    pt.trials = 400;
    const double prob = 1 / (1 + std::exp(-slope * std::log(pt.x / center)));
    for (int t = 0; t < 400; ++t) pt.successes += rng.bernoulli(prob);
    column.push_back(pt);
  }
  const CrossingFit fit = fit_crossing(column, 0.05);
  ASSERT_TRUE(fit.usable);
  EXPECT_NEAR(fit.crossing / center, 1.0, 0.05);
  EXPECT_NEAR(fit.slope, slope, 0.6);
  EXPECT_NEAR(fit.ratio, fit.crossing / 0.05, 1e-12);
  EXPECT_TRUE(monotone_within(column));
}

TEST(Sweep, SeparatedDataUsesHullMidpoint) {
  std::vector<SweepPoint> column;
  for (double x : {0.01, 0.02, 0.04, 0.08}) {
    SweepPoint pt;
    pt.x = x;
    pt.trials = 50;
    pt.successes = x > 0.03 ? 50 : 0;
    column.push_back(pt);
  }
  const CrossingFit fit = fit_crossing(column, 0.03);
  ASSERT_TRUE(fit.usable);
  EXPECT_DOUBLE_EQ(fit.hull_low, 0.02);
  EXPECT_DOUBLE_EQ(fit.hull_high, 0.04);
  EXPECT_NEAR(fit.crossing, std::sqrt(0.02 * 0.04), 1e-12);
  EXPECT_FALSE(fit.warnings.empty());
}

TEST(Sweep, TimeoutColumnsAreUnusable) {
  std::vector<SweepPoint> column(2);
  column[0].x = 0.1;
  column[0].trials = column[0].timeouts = 10;
  column[1].x = 0.2;
  column[1].trials = 10;
  column[1].successes = 5;
  const CrossingFit fit = fit_crossing(column, 0.1);
  EXPECT_FALSE(fit.usable);
  EXPECT_GE(fit.warnings.size(), 1u);
}

TEST(Sweep, MonotoneDetectsDrop) {
  std::vector<SweepPoint> column(2);
  column[0].x = 0.1;
  column[0].trials = 200;
  column[0].successes = 180;
  column[1].x = 0.2;
  column[1].trials = 200;
  column[1].successes = 20;
  EXPECT_FALSE(monotone_within(column));
  std::swap(column[0].successes, column[1].successes);
  EXPECT_TRUE(monotone_within(column));
}
