#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "triple_couple/combinatorics.hpp"
#include "triple_couple/coupling.hpp"
#include "triple_couple/errors.hpp"
#include "triple_couple/sampling.hpp"

namespace triple_couple {

namespace {

// Sum over the 120 clean cycles on vertex labels 0..5 that meet the triangle
// edges among `tri` (and contain `must`, if given) of p^(edges outside them).
double shape_sum(std::initializer_list<Vertex> tri, std::optional<Edge> must, double p) {
  std::array<bool, 6> in_t{};
  for (Vertex v : tri) in_t[v] = true;
  double total = 0.0;
  for (const CleanCycle& c : all_clean_cycles(6)) {
    const auto edges = cycle_edge_set(c);
    int inside = 0;
    bool has_must = !must;
    for (const Edge& e : edges) {
      if (in_t[e[0]] && in_t[e[1]]) ++inside;
      if (must && e == *must) has_must = true;
    }
    if (inside == 0 || !has_must) continue;
    total += std::pow(p, static_cast<int>(edges.size()) - inside);
  }
  return total;
}

// Dense bitset over pair ranks.
class PairBits {
 public:
  explicit PairBits(std::size_t pairs) : words_((pairs + 63) / 64, 0) {}
  bool test(std::uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(std::uint64_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }

 private:
  std::vector<std::uint64_t> words_;
};

}  // namespace

CycleQConstants cycle_q_constants(std::size_t n, double p) {
  CycleQConstants k;
  if (n < 6) return k;
  const auto choose = [](std::size_t a, std::size_t b) {
    return a < b ? 0.0 : binomial_real(a, b);
  };
  // Triangle on labels {0,1,2}; the cycle meets it in three or two vertices.
  k.base = choose(n - 3, 3) * shape_sum({0, 1, 2}, std::nullopt, p) +
           3.0 * choose(n - 3, 4) * shape_sum({0, 1}, std::nullopt, p);
  // Far edge {3,4} (or {2,3} when only 0,1 are triangle vertices).
  k.far = choose(n - 5, 1) * shape_sum({0, 1, 2}, Edge{3, 4}, p) +
          3.0 * choose(n - 5, 2) * shape_sum({0, 1}, Edge{2, 3}, p);
  // Touching edge from triangle vertex 0 to an outside vertex.
  k.touch = choose(n - 4, 2) * shape_sum({0, 1, 2}, Edge{0, 3}, p) +
            2.0 * choose(n - 4, 3) * shape_sum({0, 1}, Edge{0, 2}, p);
  return k;
}

CouplingOutcome run_certificate(const ModelParams& params, RngSpec spec,
                                const CertificateOptions& options) {
  params.validate();
  const std::size_t n = params.n;
  if (n > options.max_n) throw std::invalid_argument("certificate: n above max_n");
  const double p = params.p;
  const double pi = params.pi;
  const double p3 = p * p * p;
  Rng rng(spec);

  CouplingOutcome out;
  out.bad.degree_cap = options.degree_cap ? DegreeCap{*options.degree_cap} : default_degree_cap(n);

  // Seeding. Over budget counts as a seeding failure; the run continues with
  // no seeded cycles so the step statistics are still recorded.
  std::vector<CleanCycle> c1, c2;
  const CycleCountModel lambdas = expected_counts(params);
  if (lambdas.lambda1 > options.lambda_budget || lambdas.lambda2 > options.lambda_budget) {
    out.seeding_failed = true;
    out.fail_reason = FailReason::kLambdaOverBudget;
  } else {
    CouplerOptions co;
    co.mode = CountLawMode::kPoisson;
    co.lambda_budget = options.lambda_budget;
    co.rejection_budget = options.rejection_budget;
    CycleCoupler coupler(params, co);
    const CoupledCollections col = coupler.sample(rng);
    if (col.ok()) {
      c1 = col.c1;
      c2 = col.c2;
    } else {
      out.seeding_failed = true;
      out.fail_reason =
          col.count_coupling_failed ? FailReason::kCountMismatch : FailReason::kNonDisjoint;
    }
  }
  out.failed = out.seeding_failed;

  std::vector<std::uint64_t> row(n, 0);
  for (std::size_t u = 0; u < n; ++u) row[u] = u * n - u * (u + 1) / 2;
  const auto rank = [&](Vertex u, Vertex v) -> std::uint64_t {
    if (u > v) std::swap(u, v);
    return row[u] + v - u - 1;
  };
  const std::size_t pairs = n * (n - 1) / 2;

  PairBits r_bits(pairs), g_bits(pairs);
  std::vector<int> deg_r(n, 0);
  std::size_t r_size = 0;
  const auto add_r = [&](Vertex u, Vertex v) {
    const auto k = rank(u, v);
    if (r_bits.test(k)) return;
    r_bits.set(k);
    ++deg_r[u];
    ++deg_r[v];
    ++r_size;
  };

  // Seeded cycle per vertex (seeded cycles are vertex-disjoint).
  std::vector<int> seeded_at(n, -1);
  std::vector<std::vector<Edge>> seeded_edges;
  for (const CleanCycle& c : c1) {
    seeded_edges.push_back(cycle_edge_set(c));
    for (Vertex v : c.vertices()) seeded_at[v] = static_cast<int>(seeded_edges.size() - 1);
    for (const Edge& e : seeded_edges.back()) {
      add_r(e[0], e[1]);
      g_bits.set(rank(e[0], e[1]));
    }
  }
  {
    const Graph g0 = sample_gnp(n, p, rng);
    for (const Edge& e : g0.edges()) g_bits.set(rank(e[0], e[1]));
  }

  std::vector<Triple> c2_triples;
  for (const CleanCycle& c : c2)
    for (const Triple& t : c.hyperedges()) c2_triples.push_back(t);
  std::sort(c2_triples.begin(), c2_triples.end());

  const CycleQConstants kq = cycle_q_constants(n, p);
  const double bump = 1.0 / p - 1.0;
  std::unordered_map<std::uint64_t, std::vector<Vertex>> refused_by_pair;
  std::vector<Triple> present;

  Triple t{0, 1, 2};
  bool more = n >= 3;
  while (more) {
    const Vertex a = t[0], b = t[1], c = t[2];
    ++out.stats.steps;
    if (std::binary_search(c2_triples.begin(), c2_triples.end(), t)) {
      ++out.stats.skipped_steps;
      more = next_triple(n, t);
      continue;
    }
    const std::array<Edge, 3> ej{Edge{a, b}, Edge{a, c}, Edge{b, c}};
    const Vertex third[3] = {c, b, a};

    double q = 0.0;
    bool dangerous = false;
    int r_in_e = 0;
    for (int s = 0; s < 3; ++s) {
      const auto k = rank(ej[s][0], ej[s][1]);
      if (r_bits.test(k)) ++r_in_e;
      auto it = refused_by_pair.find(k);
      if (it == refused_by_pair.end()) continue;
      for (Vertex w : it->second) {
        if (w == third[s]) continue;
        const int missing = !r_bits.test(rank(ej[s][0], w)) + !r_bits.test(rank(ej[s][1], w));
        q += std::pow(p, missing);
        if (missing == 0) dangerous = true;
      }
    }

    const long touch = static_cast<long>(deg_r[a]) + deg_r[b] + deg_r[c] - 2L * r_in_e;
    const long far = static_cast<long>(r_size) - r_in_e - touch;
    q += kq.base + bump * (static_cast<double>(far) * kq.far + static_cast<double>(touch) * kq.touch);

    // Seeded cycles are not excluded events; remove their first-order terms.
    int seen[3] = {-1, -1, -1};
    for (int s = 0; s < 3; ++s) {
      const int idx = seeded_at[t[s]];
      if (idx < 0 || std::find(seen, seen + 3, idx) != seen + 3) continue;
      seen[s] = idx;
      int inside = 0, in_r = 0;
      for (const Edge& e : seeded_edges[idx]) {
        if (e == ej[0] || e == ej[1] || e == ej[2]) {
          ++inside;
        } else if (r_bits.test(rank(e[0], e[1]))) {
          ++in_r;
        }
      }
      if (inside == 0) continue;
      const int outside = static_cast<int>(seeded_edges[idx].size()) - inside;
      q -= std::pow(p, outside) * (1.0 + bump * in_r);
    }

    out.stats.max_q = std::max(out.stats.max_q, q);
    if (dangerous) ++out.stats.dangerous_steps;
    const double pi_j = p3 * (1.0 - q);
    const double u = rng.uniform();

    if (pi <= pi_j) {
      ++out.stats.coin_flips;
      if (u < pi / pi_j) {
        ++out.stats.coin_successes;
        const bool yes = g_bits.test(rank(a, b)) && g_bits.test(rank(a, c)) &&
                         g_bits.test(rank(b, c));
        if (yes) {
          ++out.stats.yes_answers;
          present.push_back(t);
          for (const Edge& e : ej) add_r(e[0], e[1]);
        } else {
          for (int s = 0; s < 3; ++s) refused_by_pair[rank(ej[s][0], ej[s][1])].push_back(third[s]);
        }
      }
    } else {
      ++out.stats.bound_violations;
      if (u < pi) {
        present.push_back(t);
        if (!out.failed) {
          out.failed = true;
          out.fail_reason = dangerous ? FailReason::kDangerousStep : FailReason::kPiPrimeExceedsPi;
        }
      }
    }
    more = next_triple(n, t);
  }

  present.insert(present.end(), c2_triples.begin(), c2_triples.end());
  out.h = Hypergraph3(n, std::move(present));
  std::vector<Edge> g_edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (g_bits.test(rank(u, v))) g_edges.push_back(Edge{u, v});
  out.g = Graph(n, std::move(g_edges));
  out.bad.b1 = max_hyperdegree(out.h) > out.bad.degree_cap.cap;
  out.bad.b2 = find_avoidable(out.h, options.max_avoidable_edges).has_value();
  out.embedding_ok = verify_embedding(out.g, out.h);
  out.certificate = !out.seeding_failed && out.stats.bound_violations == 0;
  return out;
}

}  // namespace triple_couple
