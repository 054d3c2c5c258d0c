#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "triple_couple/factor.hpp"

namespace triple_couple {

enum class SweepModel {
  // Triangle factor in G(n, p); the grid holds p values.
  kGraph,
  // Perfect matching in H_3(n, pi); the grid holds pi values.
  kHypergraph,
};

struct SweepSpec {
  SweepModel model = SweepModel::kGraph;
  std::vector<std::size_t> n_values;
  std::vector<double> grid;
  std::uint64_t trials = 100;
  std::chrono::milliseconds timeout = kDefaultDecisionTimeout;
  std::uint64_t master_seed = 0;
  unsigned jobs = 1;

  // Throws std::invalid_argument: n not divisible by 3, empty or
  // non-increasing grid, values outside [0, 1], zero trials.
  void validate() const;
};

struct SweepPoint {
  std::size_t n = 0;
  double x = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  std::uint64_t timeouts = 0;

  std::uint64_t decided() const { return trials - timeouts; }
  double rate() const {
    return decided() ? static_cast<double>(successes) / static_cast<double>(decided()) : 0.0;
  }
};

struct CrossingFit {
  std::size_t n = 0;
  bool usable = false;
  // Grid value where the fitted success probability is 1/2.
  double crossing = 0.0;
  double theoretical = 0.0;
  double ratio = 0.0;
  // Logistic slope in ln x.
  double slope = 0.0;
  // Range the crossing is confined to after dropping uninformative columns.
  double hull_low = 0.0;
  double hull_high = 0.0;
  std::vector<std::string> warnings;
};

struct SweepResult {
  // Ordered by n, then by grid value.
  std::vector<SweepPoint> points;
  std::vector<CrossingFit> fits;
};

SweepResult run_sweep(const SweepSpec& spec);

// Maximum-likelihood logistic fit of success against ln x for one n.
// Columns with no decided trials are ignored.
CrossingFit fit_crossing(const std::vector<SweepPoint>& column, double theoretical);

// True when every later grid point's rate is at least every earlier one's
// minus `sigmas` binomial standard errors of their difference.
bool monotone_within(const std::vector<SweepPoint>& column, double sigmas = 3.0);

}  // namespace triple_couple
