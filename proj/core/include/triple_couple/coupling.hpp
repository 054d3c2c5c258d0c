#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string_view>
#include <vector>

#include "triple_couple/cycle_coupler.hpp"
#include "triple_couple/motifs.hpp"
#include "triple_couple/rng.hpp"
#include "triple_couple/small_masks.hpp"
#include "triple_couple/structures.hpp"

namespace triple_couple {

enum class FailReason {
  kNone,
  kCountMismatch,
  kNonDisjoint,
  kPiPrimeExceedsPi,
  kDangerousStep,
  // Expected clean-cycle counts exceed the seeding budget.
  kLambdaOverBudget,
};

std::string_view to_string(FailReason reason);

struct BadEventFlags {
  // Some vertex of the final H has degree above the cap.
  bool b1 = false;
  // The final H contains an avoidable configuration.
  bool b2 = false;
  DegreeCap degree_cap;
};

struct CouplingStats {
  double max_q = 0.0;
  std::uint64_t steps = 0;
  std::uint64_t skipped_steps = 0;
  std::uint64_t coin_flips = 0;
  std::uint64_t coin_successes = 0;
  std::uint64_t yes_answers = 0;
  std::uint64_t oracle_samples = 0;
  std::uint64_t dangerous_steps = 0;
  // Steps where the hyperedge probability exceeded the triangle probability.
  std::uint64_t bound_violations = 0;
};

struct CouplingOutcome {
  Graph g;
  Hypergraph3 h;
  bool failed = false;
  FailReason fail_reason = FailReason::kNone;
  bool seeding_failed = false;
  BadEventFlags bad;
  CouplingStats stats;
  bool embedding_ok = true;
  // False when an oracle or rejection budget ran out; such runs are excluded
  // from statistics.
  bool usable = true;
  // Certificate mode only: no seeding failure, no bound violation.
  bool certificate = false;
};

// True iff every hyperedge of h spans a triangle of g.
bool verify_embedding(const Graph& g, const Hypergraph3& h);

// Minimum, over partitions of a clean cycle's six vertices into k+1 non-empty
// parts, of the number of its nine edges joining different parts. 1 <= k <= 4.
int partition_edge_minimum(int k);

enum class PiOracle { kAuto, kEnumeration, kMonteCarlo };
enum class PiPrimeOracle { kProductForm, kMonteCarlo };

struct EngineOptions {
  CouplerOptions coupler{CountLawMode::kExact};
  PiOracle pi_oracle = PiOracle::kAuto;
  PiPrimeOracle pi_prime_oracle = PiPrimeOracle::kProductForm;
  std::uint64_t oracle_samples = 20'000;
  std::uint64_t rejection_budget = 1'000'000;
  std::size_t exact_max_n = 9;
  // Refused triangles handled by inclusion-exclusion; beyond this the
  // enumeration sums edge sets directly.
  std::size_t max_inclusion_exclusion = 18;
  int max_avoidable_edges = 6;
  std::optional<int> degree_cap;
  bool track_q = true;
};

// Largest n for which the triangle probabilities are computed by exhaustive
// enumeration over all 2^C(n,2) edge sets.
inline constexpr std::size_t kEnumerationMaxN = 7;

// Everything shared by the runs at one parameter point: clean-cycle
// incidence, the seeding count laws and, for n <= kEnumerationMaxN, the
// enumeration tables. Safe to share between threads.
class ExactContext {
 public:
  ExactContext(const ModelParams& params, const EngineOptions& options,
               std::uint64_t master_seed);
  ~ExactContext();

  const ModelParams& params() const { return params_; }
  const EngineOptions& options() const { return options_; }
  const SmallUniverse& universe() const { return universe_; }
  const CycleCoupler& coupler() const { return *coupler_; }
  bool has_enumeration() const { return !cycle_count_.empty(); }
  DegreeCap degree_cap() const;

  int count_graph_cycles(std::uint64_t mask) const;

  // P(E subset of G, no refused triangle fully present, clean cycles of G are
  // exactly the seeded ones), where `forced` is the seeded cycles' edge set
  // and G ~ G(n,p) conditioned on containing `required`. Unnormalized: the
  // weights of forced edges are dropped. Requires has_enumeration().
  double enumeration_mass(std::uint64_t forced, int seeded_cycles, std::uint64_t required,
                          const std::vector<std::uint64_t>& refused) const;

 private:
  struct Table;
  const Table& table_for(std::uint64_t forced, int seeded_cycles) const;

  ModelParams params_;
  EngineOptions options_;
  SmallUniverse universe_;
  std::unique_ptr<CycleCoupler> coupler_;
  std::vector<std::uint16_t> cycle_count_;
  mutable std::mutex tables_mutex_;
  mutable std::map<std::pair<std::uint64_t, int>, std::unique_ptr<Table>> tables_;
};

// Information revealed so far in one sequential run.
struct CouplingState {
  ModelParams params;
  std::vector<CleanCycle> c1;
  std::vector<CleanCycle> c2;
  std::uint64_t c1_edges = 0;
  TripleSet c2_triples;
  // Rank of the triple to be decided next; steps follow lexicographic order.
  int j = 0;
  TripleSet present;
  TripleSet absent;
  // Edges known to be in G: seeded cycle edges and confirmed triangles.
  std::uint64_t r = 0;
  // Triples whose triangle was tested and found missing.
  std::vector<int> refused;
  bool failed = false;
  FailReason fail_reason = FailReason::kNone;
};

struct StepProbabilities {
  enum class Mode { kExactMc, kBound };
  double pi_j = 0.0;
  double pi_prime_j = 0.0;
  double q_j = 0.0;
  Mode mode = Mode::kExactMc;
};

struct StepRecord {
  int j = 0;
  bool skipped = false;
  StepProbabilities probs;
  bool coin = false;
  bool tested = false;
  bool answer = false;
  bool included = false;
  bool dangerous = false;
  bool violation = false;
};

struct OracleEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t rejections = 0;

  double ci_low() const { return mean - 1.96 * stderr_; }
  double ci_high() const { return mean + 1.96 * stderr_; }
};

// p^|E_i \ (E_j u R)| for edge masks.
double q_term(std::uint64_t e_i, std::uint64_t e_j, std::uint64_t r, double p);

// Sum of q_term over refused triangles and excluded clean cycles whose edge
// sets meet triangle j.
double compute_Q(const ExactContext& ctx, const CouplingState& state, int j);

// Some refused triangle meeting E_j lies inside E_j u R.
bool is_dangerous(const ExactContext& ctx, const CouplingState& state, int j);

// Conditional probability of triangle j in G given the revealed information,
// by enumeration (n <= kEnumerationMaxN).
double exact_pi(const ExactContext& ctx, const CouplingState& state, int j);

// Conditional probability of hyperedge j given the revealed hyperedges, the
// seeded cycles and the absence of other clean cycles. Each clean cycle
// through j leaves a set of undecided hyperedges that must not all appear;
// singletons are exact, distinct pairs are treated as independent.
double product_form_pi_prime(const ExactContext& ctx, const CouplingState& state, int j);

// Rao-Blackwellized Monte Carlo estimates over rejection-sampled conditional
// completions. Throw BudgetExceeded when the rejection budget runs out.
OracleEstimate oracle_pi(const ExactContext& ctx, const CouplingState& state, int j,
                         std::uint64_t samples, Rng& rng);
OracleEstimate oracle_pi_prime(const ExactContext& ctx, const CouplingState& state, int j,
                               std::uint64_t samples, Rng& rng);

// One sequential coupling run at small n. Typical use:
//
//   ExactCoupling run(ctx, spec);
//   while (!run.done()) run.step();
//   CouplingOutcome out = run.finish();
class ExactCoupling {
 public:
  ExactCoupling(const ExactContext& ctx, RngSpec spec);

  const CouplingState& state() const { return state_; }
  bool seeding_ok() const { return seeding_ok_; }
  bool done() const;
  StepRecord step();
  CouplingOutcome finish();

 private:
  StepProbabilities probabilities(int j);

  const ExactContext& ctx_;
  RngSpec spec_;
  Rng rng_;
  CouplingState state_;
  bool seeding_ok_ = false;
  bool usable_ = true;
  std::uint64_t g_mask_ = 0;
  TripleSet h_fallback_;
  CouplingStats stats_;
  std::uint64_t info_version_ = 0;
  std::uint64_t cached_version_ = ~std::uint64_t{0};
  double cached_denominator_ = 0.0;
};

CouplingOutcome run_exact_coupling(const ExactContext& ctx, RngSpec spec);

struct CertificateOptions {
  double lambda_budget = 20.0;
  std::uint64_t rejection_budget = 1'000'000;
  std::optional<int> degree_cap;
  int max_avoidable_edges = 6;
  std::size_t max_n = 500;
};

// Closed-form pieces of the clean-cycle part of Q for one triangle T at size n:
// base = sum over cycles meeting T of p^|E_c \ E_T|, and for a single extra
// edge e that is disjoint from T (far) or shares one vertex with it (touch),
// the sum of p^|E_c \ E_T| over cycles meeting T whose edges contain e.
struct CycleQConstants {
  double base = 0.0;
  double far = 0.0;
  double touch = 0.0;
};

CycleQConstants cycle_q_constants(std::size_t n, double p);

// Bound-mode run: pi'_j := pi, pi_j := p^3 (1 - Q_j), with the cycle part of
// Q_j taken to first order in the edges of R.
CouplingOutcome run_certificate(const ModelParams& params, RngSpec spec,
                                const CertificateOptions& options = {});

}  // namespace triple_couple
