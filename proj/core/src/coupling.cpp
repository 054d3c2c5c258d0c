#include "triple_couple/coupling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "triple_couple/errors.hpp"

namespace triple_couple {

namespace {

constexpr std::uint64_t kTabulationStream = std::uint64_t{1} << 62;

std::uint64_t low_mask(std::size_t bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

}  // namespace

std::string_view to_string(FailReason reason) {
  switch (reason) {
    case FailReason::kNone: return "none";
    case FailReason::kCountMismatch: return "count_mismatch";
    case FailReason::kNonDisjoint: return "non_disjoint";
    case FailReason::kPiPrimeExceedsPi: return "pi_prime_exceeds_pi";
    case FailReason::kDangerousStep: return "dangerous_step";
    case FailReason::kLambdaOverBudget: return "lambda_over_budget";
  }
  return "unknown";
}

bool verify_embedding(const Graph& g, const Hypergraph3& h) {
  if (g.num_vertices() != h.num_vertices()) return false;
  return std::all_of(h.hyperedges().begin(), h.hyperedges().end(),
                     [&](const Triple& t) { return g.contains_triangle(t); });
}

int partition_edge_minimum(int k) {
  if (k < 1 || k > 4) throw std::invalid_argument("partition_edge_minimum: k must be in [1,4]");
  const auto edges = cycle_edge_set(CleanCycle::make({0, 1, 2}, {3, 4, 5}));
  // Restricted growth strings enumerate each set partition once.
  std::array<int, 6> block{};
  int best = 1 << 20;
  auto rec = [&](auto&& self, int i, int used) -> void {
    if (i == 6) {
      if (used != k + 1) return;
      int crossing = 0;
      for (const Edge& e : edges) crossing += block[e[0]] != block[e[1]];
      best = std::min(best, crossing);
      return;
    }
    for (int b = 0; b <= used && b <= k; ++b) {
      block[i] = b;
      self(self, i + 1, std::max(used, b + 1));
    }
  };
  rec(rec, 0, 0);
  return best;
}

// Superset sums of the conditional edge-set weights over the edges outside
// `forced`, restricted to edge sets whose clean cycles are exactly the seeded
// ones.
struct ExactContext::Table {
  std::uint64_t forced = 0;
  std::vector<int> free_bits;
  std::vector<double> weight;  // raw weights, kept for the direct fallback
  std::vector<double> superset;

  std::size_t compress(std::uint64_t mask) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < free_bits.size(); ++i)
      if ((mask >> free_bits[i]) & 1) idx |= std::size_t{1} << i;
    return idx;
  }
};

ExactContext::ExactContext(const ModelParams& params, const EngineOptions& options,
                           std::uint64_t master_seed)
    : params_(params), options_(options), universe_(params.n) {
  params_.validate();
  if (params_.n > options_.exact_max_n || params_.n > PairIndex::kMaxVertices)
    throw std::invalid_argument("exact coupling: n too large");
  coupler_ = std::make_unique<CycleCoupler>(params_, options_.coupler,
                                            RngSpec{master_seed, kTabulationStream});
  if (params_.n <= kEnumerationMaxN && options_.pi_oracle != PiOracle::kMonteCarlo) {
    const std::size_t m = universe_.num_edges();
    cycle_count_.assign(std::size_t{1} << m, 0);
    for (std::size_t c = 0; c < universe_.cycles().size(); ++c)
      ++cycle_count_[universe_.cycle_edge_mask(static_cast<int>(c))];
    for (std::size_t b = 0; b < m; ++b) {
      const std::size_t bit = std::size_t{1} << b;
      for (std::size_t s = 0; s < cycle_count_.size(); ++s)
        if (s & bit) cycle_count_[s] = static_cast<std::uint16_t>(cycle_count_[s] + cycle_count_[s ^ bit]);
    }
    table_for(0, 0);
  } else if (options_.pi_oracle == PiOracle::kEnumeration) {
    throw std::invalid_argument("exact coupling: enumeration oracle needs n <= 7");
  }
}

ExactContext::~ExactContext() = default;

DegreeCap ExactContext::degree_cap() const {
  return options_.degree_cap ? DegreeCap{*options_.degree_cap} : default_degree_cap(params_.n);
}

int ExactContext::count_graph_cycles(std::uint64_t mask) const {
  if (!cycle_count_.empty()) return cycle_count_[mask];
  return universe_.count_cycles_in_graph(mask);
}

const ExactContext::Table& ExactContext::table_for(std::uint64_t forced, int seeded) const {
  std::lock_guard lock(tables_mutex_);
  auto& slot = tables_[{forced, seeded}];
  if (slot) return *slot;

  auto t = std::make_unique<Table>();
  t->forced = forced;
  const std::size_t m = universe_.num_edges();
  for (std::size_t b = 0; b < m; ++b)
    if (!((forced >> b) & 1)) t->free_bits.push_back(static_cast<int>(b));
  const std::size_t f = t->free_bits.size();
  const std::size_t size = std::size_t{1} << f;
  const double p = params_.p;

  std::vector<double> pw(f + 1);
  for (std::size_t k = 0; k <= f; ++k)
    pw[k] = std::pow(p, static_cast<double>(k)) * std::pow(1.0 - p, static_cast<double>(f - k));

  t->weight.assign(size, 0.0);
  std::vector<std::uint64_t> expanded(size, 0);
  for (std::size_t idx = 1; idx < size; ++idx) {
    const int low = std::countr_zero(idx);
    expanded[idx] = expanded[idx & (idx - 1)] | (std::uint64_t{1} << t->free_bits[low]);
  }
  for (std::size_t idx = 0; idx < size; ++idx)
    if (cycle_count_[forced | expanded[idx]] == seeded)
      t->weight[idx] = pw[std::popcount(idx)];
  t->superset = t->weight;
  for (std::size_t b = 0; b < f; ++b) {
    const std::size_t bit = std::size_t{1} << b;
    for (std::size_t s = 0; s < size; ++s)
      if (!(s & bit)) t->superset[s] += t->superset[s | bit];
  }
  slot = std::move(t);
  return *slot;
}

double ExactContext::enumeration_mass(std::uint64_t forced, int seeded, std::uint64_t required,
                                      const std::vector<std::uint64_t>& refused) const {
  if (!has_enumeration()) throw std::logic_error("enumeration tables not built");
  const Table& t = table_for(forced, seeded);
  const std::uint64_t base = required | forced;

  std::vector<std::uint64_t> live;
  for (std::uint64_t r : refused) {
    if ((r & ~base) == 0) return 0.0;
    live.push_back(r);
  }

  if (live.size() <= options_.max_inclusion_exclusion) {
    auto rec = [&](auto&& self, std::size_t i, std::uint64_t acc) -> double {
      if (i == live.size()) return t.superset[t.compress(acc)];
      // Including a triangle already inside acc cancels both branches.
      if ((live[i] & ~acc) == 0) return 0.0;
      return self(self, i + 1, acc) - self(self, i + 1, acc | live[i]);
    };
    return rec(rec, 0, base);
  }

  // Direct sum over the free supersets of `base`.
  const std::uint64_t free_all = low_mask(universe_.num_edges()) & ~forced;
  const std::uint64_t open = free_all & ~base;
  double total = 0.0;
  std::uint64_t sub = 0;
  do {
    const std::uint64_t full = base | sub;
    bool ok = true;
    for (std::uint64_t r : live)
      if ((r & ~full) == 0) {
        ok = false;
        break;
      }
    if (ok) total += t.weight[t.compress(full)];
    sub = (sub - open) & open;
  } while (sub != 0);
  return total;
}

double q_term(std::uint64_t e_i, std::uint64_t e_j, std::uint64_t r, double p) {
  return std::pow(p, std::popcount(e_i & ~(e_j | r)));
}

namespace {

// Edge set drawn from G(n,p) conditioned on exactly `count` clean cycles, by
// inverse transform over every edge set. Needs the enumeration tables.
std::optional<std::uint64_t> sample_graph_with_count(const ExactContext& ctx, int count,
                                                     Rng& rng) {
  const std::size_t m = ctx.universe().num_edges();
  const double p = ctx.params().p;
  std::vector<double> by_size(m + 1);
  for (std::size_t k = 0; k <= m; ++k)
    by_size[k] = std::pow(p, static_cast<double>(k)) * std::pow(1.0 - p, static_cast<double>(m - k));
  const std::uint64_t masks = std::uint64_t{1} << m;
  double total = 0.0;
  for (std::uint64_t g = 0; g < masks; ++g)
    if (ctx.count_graph_cycles(g) == count) total += by_size[std::popcount(g)];
  if (total <= 0.0) return std::nullopt;
  const double target = rng.uniform() * total;
  double acc = 0.0;
  std::optional<std::uint64_t> last;
  for (std::uint64_t g = 0; g < masks; ++g) {
    if (ctx.count_graph_cycles(g) != count) continue;
    acc += by_size[std::popcount(g)];
    last = g;
    if (acc > target) break;
  }
  return last;
}

std::vector<int> seeded_cycle_indices(const SmallUniverse& u, const std::vector<CleanCycle>& c) {
  std::vector<int> out;
  for (const CleanCycle& cyc : c) out.push_back(u.cycle_index(cyc));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> refused_masks(const SmallUniverse& u, const CouplingState& s) {
  std::vector<std::uint64_t> out;
  out.reserve(s.refused.size());
  for (int i : s.refused) out.push_back(u.triangle_mask(i));
  return out;
}

}  // namespace

double compute_Q(const ExactContext& ctx, const CouplingState& state, int j) {
  const SmallUniverse& u = ctx.universe();
  const double p = ctx.params().p;
  const std::uint64_t ej = u.triangle_mask(j);
  double q = 0.0;
  for (int i : state.refused) {
    const std::uint64_t ei = u.triangle_mask(i);
    if (ei & ej) q += q_term(ei, ej, state.r, p);
  }
  const auto seeded = seeded_cycle_indices(u, state.c1);
  for (int c : u.cycles_meeting_triangle(j)) {
    if (std::binary_search(seeded.begin(), seeded.end(), c)) continue;
    q += q_term(u.cycle_edge_mask(c), ej, state.r, p);
  }
  return q;
}

bool is_dangerous(const ExactContext& ctx, const CouplingState& state, int j) {
  const SmallUniverse& u = ctx.universe();
  const std::uint64_t ej = u.triangle_mask(j);
  for (int i : state.refused) {
    const std::uint64_t ei = u.triangle_mask(i);
    if ((ei & ej) && (ei & ~(ej | state.r)) == 0) return true;
  }
  return false;
}

double exact_pi(const ExactContext& ctx, const CouplingState& state, int j) {
  const std::uint64_t ej = ctx.universe().triangle_mask(j);
  if ((ej & ~state.r) == 0) return 1.0;
  const int seeded = static_cast<int>(state.c1.size());
  const auto refused = refused_masks(ctx.universe(), state);
  const double den = ctx.enumeration_mass(state.c1_edges, seeded, state.r, refused);
  if (den <= 0.0) return 0.0;
  return ctx.enumeration_mass(state.c1_edges, seeded, state.r | ej, refused) / den;
}

double product_form_pi_prime(const ExactContext& ctx, const CouplingState& state, int j) {
  const SmallUniverse& u = ctx.universe();
  const double pi = ctx.params().pi;
  // Undecided remainders of the clean cycles through j. A cycle whose other
  // two hyperedges are present forbids j outright; a single undecided triple
  // must be absent; a pair must not be fully present.
  const auto fixed = [&](int t) { return state.present.test(t) || state.c2_triples.test(t); };
  // Triples ruled out whatever j does: the last open hyperedge of a cycle
  // whose other two are fixed.
  TripleSet forced;
  for (int f = 0; f < static_cast<int>(u.num_triples()); ++f) {
    if (!fixed(f)) continue;
    for (int c : u.cycles_with_hyperedge(f)) {
      int open = -1;
      int n_fixed = 0;
      for (int t : u.cycle_triples(c)) {
        if (fixed(t)) {
          ++n_fixed;
        } else {
          open = t;
        }
      }
      if (n_fixed == 2 && open != j) forced.set(open);
    }
  }
  std::vector<int> singles;
  std::vector<std::pair<int, int>> pairs;
  for (int c : u.cycles_with_hyperedge(j)) {
    int open[2];
    int undecided = 0;
    bool broken = false;
    for (int t : u.cycle_triples(c)) {
      if (t == j) continue;
      if (state.absent.test(t) || forced.test(t)) {
        broken = true;
        break;
      }
      if (!fixed(t)) open[undecided++] = t;
    }
    if (broken) continue;
    if (undecided == 0) return 0.0;
    if (undecided == 1) {
      singles.push_back(open[0]);
    } else {
      pairs.emplace_back(std::min(open[0], open[1]), std::max(open[0], open[1]));
    }
  }
  std::sort(singles.begin(), singles.end());
  singles.erase(std::unique(singles.begin(), singles.end()), singles.end());
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  double ratio = std::pow(1.0 - pi, static_cast<double>(singles.size()));
  for (const auto& [a, b] : pairs) {
    // Already satisfied once a forced-absent single is one of the pair.
    if (std::binary_search(singles.begin(), singles.end(), a) ||
        std::binary_search(singles.begin(), singles.end(), b))
      continue;
    ratio *= 1.0 - pi * pi;
  }
  const double num = pi * ratio;
  return num / (num + 1.0 - pi);
}

ExactCoupling::ExactCoupling(const ExactContext& ctx, RngSpec spec)
    : ctx_(ctx), spec_(spec), rng_(spec) {
  const SmallUniverse& u = ctx_.universe();
  const double p = ctx_.params().p;
  state_.params = ctx_.params();
  const std::uint64_t budget = ctx_.options().rejection_budget;

  const CoupledCollections col = ctx_.coupler().sample(rng_);
  seeding_ok_ = col.ok();
  if (!seeding_ok_) {
    state_.failed = true;
    state_.fail_reason =
        col.count_coupling_failed ? FailReason::kCountMismatch : FailReason::kNonDisjoint;
    state_.j = static_cast<int>(u.num_triples());
    // Fall back to independent draws with the coupled counts.
    try {
      std::uint64_t tries = 0;
      if (ctx_.has_enumeration()) {
        const auto g = sample_graph_with_count(ctx_, static_cast<int>(col.x1), rng_);
        if (!g) throw BudgetExceeded("graph count has no edge set");
        g_mask_ = *g;
      }
      while (!ctx_.has_enumeration()) {
        if (++tries > budget) throw BudgetExceeded("graph count rejection");
        std::uint64_t m = 0;
        for (std::size_t e = 0; e < u.num_edges(); ++e)
          if (rng_.bernoulli(p)) m |= std::uint64_t{1} << e;
        if (ctx_.count_graph_cycles(m) == static_cast<int>(col.x1)) {
          g_mask_ = m;
          break;
        }
      }
      tries = 0;
      for (;;) {
        if (++tries > budget) throw BudgetExceeded("hypergraph count rejection");
        TripleSet s;
        for (std::size_t t = 0; t < u.num_triples(); ++t)
          if (rng_.bernoulli(ctx_.params().pi)) s.set(static_cast<int>(t));
        if (u.count_cycles_in_hypergraph(s) == static_cast<int>(col.x2)) {
          h_fallback_ = s;
          break;
        }
      }
    } catch (const BudgetExceeded&) {
      usable_ = false;
    }
    return;
  }

  state_.c1 = col.c1;
  state_.c2 = col.c2;
  for (const CleanCycle& c : col.c1)
    state_.c1_edges |= u.cycle_edge_mask(u.cycle_index(c));
  for (const CleanCycle& c : col.c2)
    for (const Triple& t : c.hyperedges()) state_.c2_triples.set(u.triple_index(t));
  state_.r = state_.c1_edges;

  // The graph side is drawn up front from its exact conditional law; tests
  // are answered from it.
  try {
    std::uint64_t tries = 0;
    for (;;) {
      if (++tries > budget) throw BudgetExceeded("graph completion rejection");
      std::uint64_t m = state_.c1_edges;
      for (std::size_t e = 0; e < u.num_edges(); ++e)
        if (!((m >> e) & 1) && rng_.bernoulli(p)) m |= std::uint64_t{1} << e;
      if (ctx_.count_graph_cycles(m) == static_cast<int>(col.c1.size())) {
        g_mask_ = m;
        break;
      }
    }
  } catch (const BudgetExceeded&) {
    usable_ = false;
    state_.j = static_cast<int>(u.num_triples());
  }
}

bool ExactCoupling::done() const {
  return state_.j >= static_cast<int>(ctx_.universe().num_triples());
}

StepProbabilities ExactCoupling::probabilities(int j) {
  const EngineOptions& opt = ctx_.options();
  StepProbabilities out;
  out.mode = StepProbabilities::Mode::kExactMc;

  if (opt.pi_prime_oracle == PiPrimeOracle::kMonteCarlo) {
    Rng sub(spec_.child(2 * static_cast<std::uint64_t>(j) + 1));
    const OracleEstimate est = oracle_pi_prime(ctx_, state_, j, opt.oracle_samples, sub);
    stats_.oracle_samples += est.samples;
    out.pi_prime_j = est.mean;
  } else {
    out.pi_prime_j = product_form_pi_prime(ctx_, state_, j);
  }

  const std::uint64_t ej = ctx_.universe().triangle_mask(j);
  if ((ej & ~state_.r) == 0) {
    out.pi_j = 1.0;
  } else if (ctx_.has_enumeration()) {
    const int seeded = static_cast<int>(state_.c1.size());
    const auto refused = refused_masks(ctx_.universe(), state_);
    if (cached_version_ != info_version_) {
      cached_denominator_ = ctx_.enumeration_mass(state_.c1_edges, seeded, state_.r, refused);
      cached_version_ = info_version_;
    }
    out.pi_j = cached_denominator_ > 0.0
                   ? ctx_.enumeration_mass(state_.c1_edges, seeded, state_.r | ej, refused) /
                         cached_denominator_
                   : 0.0;
  } else {
    Rng sub(spec_.child(2 * static_cast<std::uint64_t>(j) + 2));
    const OracleEstimate est = oracle_pi(ctx_, state_, j, opt.oracle_samples, sub);
    stats_.oracle_samples += est.samples;
    out.pi_j = est.mean;
  }

  if (opt.track_q) out.q_j = compute_Q(ctx_, state_, j);
  return out;
}

StepRecord ExactCoupling::step() {
  StepRecord rec;
  if (done()) return rec;
  const int j = state_.j++;
  rec.j = j;
  ++stats_.steps;
  if (state_.c2_triples.test(j)) {
    rec.skipped = true;
    ++stats_.skipped_steps;
    return rec;
  }

  try {
    rec.probs = probabilities(j);
  } catch (const BudgetExceeded&) {
    usable_ = false;
    state_.j = static_cast<int>(ctx_.universe().num_triples());
    return rec;
  }
  stats_.max_q = std::max(stats_.max_q, rec.probs.q_j);
  rec.dangerous = is_dangerous(ctx_, state_, j);
  if (rec.dangerous) ++stats_.dangerous_steps;

  const double u = rng_.uniform();
  const double pi_j = rec.probs.pi_j;
  const double pi_prime = rec.probs.pi_prime_j;
  const std::uint64_t ej = ctx_.universe().triangle_mask(j);

  if (pi_prime <= pi_j) {
    ++stats_.coin_flips;
    rec.coin = pi_j > 0.0 && u < pi_prime / pi_j;
    if (!rec.coin) {
      state_.absent.set(j);
      return rec;
    }
    ++stats_.coin_successes;
    rec.tested = true;
    rec.answer = (g_mask_ & ej) == ej;
    if (rec.answer) {
      ++stats_.yes_answers;
      rec.included = true;
      state_.present.set(j);
      if ((ej & ~state_.r) != 0) {
        state_.r |= ej;
        ++info_version_;
      }
    } else {
      state_.absent.set(j);
      state_.refused.push_back(j);
      ++info_version_;
    }
    return rec;
  }

  // The hyperedge is more likely than its triangle: the coupling breaks here
  // if the hyperedge is drawn.
  rec.violation = true;
  ++stats_.bound_violations;
  rec.included = u < pi_prime;
  if (rec.included) {
    state_.present.set(j);
    if (!state_.failed) {
      state_.failed = true;
      state_.fail_reason = rec.dangerous ? FailReason::kDangerousStep : FailReason::kPiPrimeExceedsPi;
    }
  } else {
    state_.absent.set(j);
  }
  return rec;
}

CouplingOutcome ExactCoupling::finish() {
  while (!done()) step();
  const SmallUniverse& u = ctx_.universe();
  CouplingOutcome out;
  TripleSet h = h_fallback_;
  if (seeding_ok_) {
    h = state_.present;
    for (std::size_t w = 0; w < h.words.size(); ++w) h.words[w] |= state_.c2_triples.words[w];
  }
  out.g = u.mask_to_graph(g_mask_);
  out.h = u.to_hypergraph(h);
  out.failed = state_.failed;
  out.fail_reason = state_.fail_reason;
  out.seeding_failed = !seeding_ok_;
  out.bad.degree_cap = ctx_.degree_cap();
  out.bad.b1 = max_hyperdegree(out.h) > out.bad.degree_cap.cap;
  out.bad.b2 = find_avoidable(out.h, ctx_.options().max_avoidable_edges).has_value();
  out.stats = stats_;
  out.embedding_ok = verify_embedding(out.g, out.h);
  out.usable = usable_;
  return out;
}

CouplingOutcome run_exact_coupling(const ExactContext& ctx, RngSpec spec) {
  ExactCoupling run(ctx, spec);
  return run.finish();
}

}  // namespace triple_couple
