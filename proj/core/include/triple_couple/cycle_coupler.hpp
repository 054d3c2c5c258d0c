#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "triple_couple/motifs.hpp"
#include "triple_couple/rng.hpp"
#include "triple_couple/structures.hpp"

namespace triple_couple {

// Expected clean-cycle counts: lambda1 = 120 C(n,6) p^9 in G(n,p) and
// lambda2 = 120 C(n,6) pi^3 in H_3(n,pi). Both are zero for n < 6.
struct CycleCountModel {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

CycleCountModel expected_counts(const ModelParams& params);

// Total variation distance between Poisson(l1) and Poisson(l2), summed until
// both remaining tails are below 1e-13. Throws on negative input.
double tv_distance_poisson(double l1, double l2);

// histogram[k] = number of samples with value k.
using Histogram = std::vector<std::uint64_t>;

// TV distance between the two normalized histograms. Throws if either is empty.
double tv_distance_empirical(const Histogram& a, const Histogram& b);

// A probability mass function on {0, 1, ...}, truncated where negligible.
struct CountLaw {
  std::vector<double> pmf;

  static CountLaw poisson(double lambda);
  static CountLaw from_histogram(const Histogram& h);
  double mass(std::size_t k) const { return k < pmf.size() ? pmf[k] : 0.0; }
};

double tv_distance(const CountLaw& a, const CountLaw& b);

// Maximal coupling: with probability sum_k min(a_k, b_k) a common value drawn
// from the normalized overlap, otherwise independent draws from the
// normalized residuals. P(first != second) equals tv_distance(a, b).
std::pair<std::size_t, std::size_t> sample_maximal_coupling(const CountLaw& a,
                                                            const CountLaw& b, Rng& rng);

// Count laws tabulated by Monte Carlo.
Histogram graph_cycle_histogram(std::size_t n, double p, std::uint64_t samples, RngSpec spec);
Histogram hypergraph_cycle_histogram(std::size_t n, double pi, std::uint64_t samples,
                                     RngSpec spec);

enum class CountLawMode { kPoisson, kExact };

struct CouplerOptions {
  CountLawMode mode = CountLawMode::kPoisson;
  double lambda_budget = 20.0;
  std::uint64_t rejection_budget = 1'000'000;
  // Samples per side when mode is kExact.
  std::uint64_t tabulation_samples = 100'000;
};

struct CoupledCollections {
  std::vector<CleanCycle> c1;
  std::vector<CleanCycle> c2;
  std::size_t x1 = 0;
  std::size_t x2 = 0;
  bool count_coupling_failed = false;
  // The drawn collection was not pairwise vertex-disjoint.
  bool disjointness_failed = false;

  bool ok() const { return !count_coupling_failed && !disjointness_failed; }
};

// Holds the two count laws for one parameter point so repeated draws do not
// re-tabulate.
class CycleCoupler {
 public:
  // Throws BudgetExceeded when either expected count exceeds the budget.
  CycleCoupler(const ModelParams& params, const CouplerOptions& options,
               RngSpec tabulation_stream = {});

  CoupledCollections sample(Rng& rng) const;

  const CountLaw& law1() const { return law1_; }
  const CountLaw& law2() const { return law2_; }
  const CycleCountModel& model() const { return model_; }
  double count_tv() const { return tv_distance(law1_, law2_); }

  // t i.i.d. uniform clean cycles, redrawn until pairwise vertex-disjoint.
  // Returns the last draw and false if that never happens within the budget
  // (immediately when 6t > n).
  std::pair<std::vector<CleanCycle>, bool> uniform_disjoint(std::size_t t, Rng& rng) const;

 private:
  ModelParams params_;
  CouplerOptions options_;
  CycleCountModel model_;
  CountLaw law1_;
  CountLaw law2_;
};

CoupledCollections sample_coupled_collections(const ModelParams& params, Rng& rng,
                                              const CouplerOptions& options = {});

}  // namespace triple_couple
