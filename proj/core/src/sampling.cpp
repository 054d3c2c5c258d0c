#include "triple_couple/sampling.hpp"

#include <algorithm>
#include <stdexcept>

#include "triple_couple/errors.hpp"

namespace triple_couple {

namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0,1]");
  }
}

// Calls visit(rank) for every selected rank in [0, total).
template <typename Visit>
void bernoulli_ranks(std::uint64_t total, double p, Rng& rng, Visit&& visit) {
  if (p <= 0.0 || total == 0) return;
  if (p >= 1.0) {
    for (std::uint64_t r = 0; r < total; ++r) visit(r);
    return;
  }
  std::uint64_t r = 0;
  while (true) {
    const std::uint64_t skip = rng.geometric_skip(p);
    if (skip >= total - r) return;
    r += skip;
    visit(r);
    ++r;
    if (r >= total) return;
  }
}

}  // namespace

Graph sample_gnp(std::size_t n, double p, Rng& rng) {
  check_probability(p, "p");
  if (n < 1) throw std::invalid_argument("sample_gnp: n must be >= 1");
  std::vector<Edge> edges;
  bernoulli_ranks(binomial(n, 2), p, rng,
                  [&](std::uint64_t r) { edges.push_back(pair_unrank(n, r)); });
  return Graph(n, std::move(edges));
}

Graph sample_gnp(std::size_t n, double p, RngSpec spec) {
  Rng rng(spec);
  return sample_gnp(n, p, rng);
}

Hypergraph3 sample_h3(std::size_t n, double pi, Rng& rng) {
  check_probability(pi, "pi");
  if (n < 3) throw std::invalid_argument("sample_h3: n must be >= 3");
  std::vector<Triple> triples;
  bernoulli_ranks(binomial(n, 3), pi, rng, [&](std::uint64_t r) {
    triples.push_back(triple_unrank(n, r));
  });
  return Hypergraph3(n, std::move(triples));
}

Hypergraph3 sample_h3(std::size_t n, double pi, RngSpec spec) {
  Rng rng(spec);
  return sample_h3(n, pi, rng);
}

Graph shadow(const Hypergraph3& h) {
  std::vector<Edge> edges;
  edges.reserve(3 * h.num_hyperedges());
  for (const auto& t : h.hyperedges()) {
    for (const auto& e : triangle_edges(t)) edges.push_back(e);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph(h.num_vertices(), std::move(edges));
}

ConditionalSample sample_h3_conditional(std::size_t n, double pi,
                                        const std::vector<Triple>& forced,
                                        const std::vector<CleanCycle>& allowed,
                                        Rng& rng,
                                        const ConditionalOptions& options) {
  check_probability(pi, "pi");
  std::vector<Triple> forced_sorted = forced;
  for (auto& t : forced_sorted) t = make_triple(t[0], t[1], t[2]);
  std::sort(forced_sorted.begin(), forced_sorted.end());
  forced_sorted.erase(std::unique(forced_sorted.begin(), forced_sorted.end()),
                      forced_sorted.end());
  std::vector<Triple> excluded = options.excluded;
  for (auto& t : excluded) t = make_triple(t[0], t[1], t[2]);
  std::sort(excluded.begin(), excluded.end());

  for (const auto& t : forced_sorted) {
    if (std::binary_search(excluded.begin(), excluded.end(), t)) {
      throw std::invalid_argument("sample_h3_conditional: triple both forced and excluded");
    }
  }
  std::vector<CleanCycle> allowed_sorted = allowed;
  for (auto& c : allowed_sorted) c = c.canonical();
  std::sort(allowed_sorted.begin(), allowed_sorted.end());
  allowed_sorted.erase(std::unique(allowed_sorted.begin(), allowed_sorted.end()),
                       allowed_sorted.end());
  if (clean_cycles_in_hypergraph(Hypergraph3(n, forced_sorted)) != allowed_sorted) {
    throw std::invalid_argument(
        "sample_h3_conditional: clean cycles of the forced set differ from the allowed set");
  }

  const std::uint64_t total = binomial(n, 3);
  for (std::uint64_t attempt = 0; attempt < options.rejection_budget; ++attempt) {
    std::vector<Triple> triples = forced_sorted;
    bernoulli_ranks(total, pi, rng, [&](std::uint64_t r) {
      const Triple t = triple_unrank(n, r);
      if (std::binary_search(excluded.begin(), excluded.end(), t)) return;
      if (std::binary_search(forced_sorted.begin(), forced_sorted.end(), t)) return;
      triples.push_back(t);
    });
    Hypergraph3 h(n, std::move(triples));
    if (clean_cycles_in_hypergraph(h) == allowed_sorted) {
      return ConditionalSample{std::move(h), attempt};
    }
  }
  throw BudgetExceeded("sample_h3_conditional: rejection budget exhausted");
}

}  // namespace triple_couple
