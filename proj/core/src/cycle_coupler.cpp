#include "triple_couple/cycle_coupler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "triple_couple/errors.hpp"
#include "triple_couple/sampling.hpp"
#include "triple_couple/small_masks.hpp"

namespace triple_couple {

namespace {

double poisson_log_pmf(double lambda, std::size_t k) {
  if (lambda == 0.0) return k == 0 ? 0.0 : -INFINITY;
  const double kd = static_cast<double>(k);
  return -lambda + kd * std::log(lambda) - std::lgamma(kd + 1.0);
}

std::size_t poisson_cutoff(double lambda) {
  return static_cast<std::size_t>(std::ceil(lambda + 12.0 * std::sqrt(lambda) + 40.0));
}

std::size_t sample_index(const std::vector<double>& weights, double total, double u) {
  double target = u * total;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (target < weights[k]) return k;
    target -= weights[k];
  }
  for (std::size_t k = weights.size(); k-- > 0;) {
    if (weights[k] > 0.0) return k;
  }
  return 0;
}

bool pairwise_disjoint(const std::vector<CleanCycle>& cycles) {
  std::vector<Vertex> all;
  for (const auto& c : cycles) {
    const auto vs = c.vertices();
    all.insert(all.end(), vs.begin(), vs.end());
  }
  std::sort(all.begin(), all.end());
  return std::adjacent_find(all.begin(), all.end()) == all.end();
}

}  // namespace

CycleCountModel expected_counts(const ModelParams& params) {
  if (params.n < 6) return {};
  const double shapes = 120.0 * binomial_real(params.n, 6);
  return CycleCountModel{shapes * std::pow(params.p, 9), shapes * std::pow(params.pi, 3)};
}

double tv_distance_poisson(double l1, double l2) {
  if (l1 < 0.0 || l2 < 0.0) throw std::invalid_argument("tv_distance_poisson: negative rate");
  if (l1 == l2) return 0.0;
  const std::size_t cutoff = poisson_cutoff(std::max(l1, l2));
  double sum = 0.0;
  for (std::size_t k = 0; k <= cutoff; ++k) {
    sum += std::abs(std::exp(poisson_log_pmf(l1, k)) - std::exp(poisson_log_pmf(l2, k)));
  }
  return std::clamp(0.5 * sum, 0.0, 1.0);
}

double tv_distance_empirical(const Histogram& a, const Histogram& b) {
  const double na = std::accumulate(a.begin(), a.end(), 0.0);
  const double nb = std::accumulate(b.begin(), b.end(), 0.0);
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("tv_distance_empirical: empty histogram");
  double sum = 0.0;
  for (std::size_t k = 0; k < std::max(a.size(), b.size()); ++k) {
    const double pa = k < a.size() ? a[k] / na : 0.0;
    const double pb = k < b.size() ? b[k] / nb : 0.0;
    sum += std::abs(pa - pb);
  }
  return 0.5 * sum;
}

CountLaw CountLaw::poisson(double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("CountLaw::poisson: negative rate");
  CountLaw law;
  const std::size_t cutoff = poisson_cutoff(lambda);
  for (std::size_t k = 0; k <= cutoff; ++k) law.pmf.push_back(std::exp(poisson_log_pmf(lambda, k)));
  while (law.pmf.size() > 1 && law.pmf.back() == 0.0) law.pmf.pop_back();
  return law;
}

CountLaw CountLaw::from_histogram(const Histogram& h) {
  const double total = std::accumulate(h.begin(), h.end(), 0.0);
  if (total == 0.0) throw std::invalid_argument("CountLaw::from_histogram: empty histogram");
  CountLaw law;
  for (auto c : h) law.pmf.push_back(c / total);
  return law;
}

double tv_distance(const CountLaw& a, const CountLaw& b) {
  double sum = 0.0;
  for (std::size_t k = 0; k < std::max(a.pmf.size(), b.pmf.size()); ++k) {
    sum += std::abs(a.mass(k) - b.mass(k));
  }
  return 0.5 * sum;
}

std::pair<std::size_t, std::size_t> sample_maximal_coupling(const CountLaw& a,
                                                            const CountLaw& b, Rng& rng) {
  const std::size_t len = std::max(a.pmf.size(), b.pmf.size());
  std::vector<double> overlap(len), ra(len), rb(len);
  double alpha = 0.0, ta = 0.0, tb = 0.0;
  for (std::size_t k = 0; k < len; ++k) {
    overlap[k] = std::min(a.mass(k), b.mass(k));
    ra[k] = a.mass(k) - overlap[k];
    rb[k] = b.mass(k) - overlap[k];
    alpha += overlap[k];
    ta += ra[k];
    tb += rb[k];
  }
  if (rng.uniform() < alpha || ta <= 0.0 || tb <= 0.0) {
    const std::size_t k = sample_index(overlap, alpha, rng.uniform());
    return {k, k};
  }
  const std::size_t k1 = sample_index(ra, ta, rng.uniform());
  const std::size_t k2 = sample_index(rb, tb, rng.uniform());
  return {k1, k2};
}

Histogram graph_cycle_histogram(std::size_t n, double p, std::uint64_t samples, RngSpec spec) {
  Histogram hist;
  Rng rng(spec);
  auto record = [&](std::size_t k) {
    if (hist.size() <= k) hist.resize(k + 1, 0);
    ++hist[k];
  };
  if (n <= PairIndex::kMaxVertices) {
    const SmallUniverse universe(n);
    for (std::uint64_t s = 0; s < samples; ++s) {
      std::uint64_t mask = 0;
      for (std::size_t e = 0; e < universe.num_edges(); ++e) {
        if (rng.bernoulli(p)) mask |= std::uint64_t{1} << e;
      }
      record(universe.count_cycles_in_graph(mask));
    }
    return hist;
  }
  for (std::uint64_t s = 0; s < samples; ++s) {
    record(clean_cycles_in_graph(sample_gnp(n, p, rng)).size());
  }
  return hist;
}

Histogram hypergraph_cycle_histogram(std::size_t n, double pi, std::uint64_t samples,
                                     RngSpec spec) {
  Histogram hist;
  Rng rng(spec);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const std::size_t k = count_clean_cycles(sample_h3(n, pi, rng));
    if (hist.size() <= k) hist.resize(k + 1, 0);
    ++hist[k];
  }
  return hist;
}

CycleCoupler::CycleCoupler(const ModelParams& params, const CouplerOptions& options,
                           RngSpec tabulation_stream)
    : params_(params), options_(options), model_(expected_counts(params)) {
  params.validate();
  if (model_.lambda1 > options.lambda_budget || model_.lambda2 > options.lambda_budget) {
    throw BudgetExceeded("expected clean-cycle count exceeds the lambda budget");
  }
  if (options.mode == CountLawMode::kPoisson || params.n < 6) {
    law1_ = CountLaw::poisson(model_.lambda1);
    law2_ = CountLaw::poisson(model_.lambda2);
  } else {
    law1_ = CountLaw::from_histogram(graph_cycle_histogram(
        params.n, params.p, options.tabulation_samples, tabulation_stream.child(1)));
    law2_ = CountLaw::from_histogram(hypergraph_cycle_histogram(
        params.n, params.pi, options.tabulation_samples, tabulation_stream.child(2)));
  }
}

std::pair<std::vector<CleanCycle>, bool> CycleCoupler::uniform_disjoint(std::size_t t,
                                                                         Rng& rng) const {
  std::vector<CleanCycle> draw;
  if (t == 0) return {draw, true};
  const bool feasible = 6 * t <= params_.n;
  const std::uint64_t attempts = feasible ? options_.rejection_budget : 1;
  for (std::uint64_t a = 0; a < attempts; ++a) {
    draw.clear();
    for (std::size_t i = 0; i < t; ++i) draw.push_back(uniform_clean_cycle(params_.n, rng));
    if (pairwise_disjoint(draw)) {
      std::sort(draw.begin(), draw.end());
      return {draw, true};
    }
  }
  std::sort(draw.begin(), draw.end());
  return {draw, false};
}

CoupledCollections CycleCoupler::sample(Rng& rng) const {
  CoupledCollections out;
  const auto [x1, x2] = sample_maximal_coupling(law1_, law2_, rng);
  out.x1 = x1;
  out.x2 = x2;
  if (x1 != x2) {
    out.count_coupling_failed = true;
    return out;
  }
  auto [cycles, disjoint] = uniform_disjoint(x1, rng);
  out.disjointness_failed = !disjoint;
  out.c1 = cycles;
  out.c2 = std::move(cycles);
  return out;
}

CoupledCollections sample_coupled_collections(const ModelParams& params, Rng& rng,
                                              const CouplerOptions& options) {
  const CycleCoupler coupler(params, options, RngSpec{rng.next(), 0});
  return coupler.sample(rng);
}

}  // namespace triple_couple
