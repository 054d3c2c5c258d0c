#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "triple_couple/factor.hpp"
#include "triple_couple/motifs.hpp"
#include "triple_couple/sampling.hpp"

using namespace triple_couple;

namespace {

// Exhaustive search over all partitions of the vertex set into triples.
bool brute_force_matching(const Hypergraph3& h) {
  const std::size_t n = h.num_vertices();
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self) -> bool {
    Vertex first = 0;
    while (first < n && used[first]) ++first;
    if (first == n) return true;
    used[first] = 1;
    for (Vertex b = first + 1; b < n; ++b) {
      if (used[b]) continue;
      used[b] = 1;
      for (Vertex c = b + 1; c < n; ++c) {
        if (used[c] || !h.contains({first, b, c})) continue;
        used[c] = 1;
        if (self(self)) return true;
        used[c] = 0;
      }
      used[b] = 0;
    }
    used[first] = 0;
    return false;
  };
  return rec(rec);
}

void expect_valid_witness(const Hypergraph3& h, const MatchResult& r) {
  ASSERT_EQ(r.witness.size(), h.num_vertices() / 3);
  std::set<Vertex> covered;
  for (const Triple& t : r.witness) {
    EXPECT_TRUE(h.contains(t));
    for (Vertex v : t) EXPECT_TRUE(covered.insert(v).second);
  }
}

Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) e.push_back({a, b});
  return Graph(n, e);
}

}  // namespace

TEST(Factor, MatchingExamples) {
  EXPECT_EQ(perfect_matching_3uniform(Hypergraph3(6, {{0, 1, 2}, {3, 4, 5}})).decision, Decision::kYes);
  EXPECT_EQ(perfect_matching_3uniform(Hypergraph3(6, {{0, 1, 2}, {0, 3, 4}})).decision, Decision::kNo);
  std::vector<Triple> all;
  for (Vertex a = 0; a < 9; ++a)
    for (Vertex b = a + 1; b < 9; ++b)
      for (Vertex c = b + 1; c < 9; ++c) all.push_back({a, b, c});
  const Hypergraph3 k9(9, all);
  const MatchResult r = perfect_matching_3uniform(k9);
  EXPECT_EQ(r.decision, Decision::kYes);
  expect_valid_witness(k9, r);
  EXPECT_EQ(perfect_matching_3uniform(Hypergraph3(0)).decision, Decision::kYes);
  EXPECT_THROW(perfect_matching_3uniform(Hypergraph3(4)), std::invalid_argument);
}

TEST(Factor, TriangleFactorExamples) {
  EXPECT_EQ(triangle_factor(complete(6)).decision, Decision::kYes);
  EXPECT_EQ(triangle_factor(complete(3)).decision, Decision::kYes);
  const Graph c6(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
  EXPECT_EQ(triangle_factor(c6).decision, Decision::kNo);
  // Two triangles sharing a vertex plus an isolated triple of vertices.
  const Graph bowtie(6, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}});
  EXPECT_EQ(triangle_factor(bowtie).decision, Decision::kNo);
}

TEST(Factor, WitnessSpansGraphEdges) {
  const Graph g = sample_gnp(30, 0.5, RngSpec{97, 0});
  const MatchResult r = triangle_factor(g);
  ASSERT_EQ(r.decision, Decision::kYes);
  ASSERT_EQ(r.witness.size(), 10u);
  std::set<Vertex> covered;
  for (const Triple& t : r.witness) {
    EXPECT_TRUE(g.contains_triangle(t));
    for (Vertex v : t) EXPECT_TRUE(covered.insert(v).second);
  }
}

TEST(Factor, AgreesWithBruteForce) {
  int yes = 0;
  for (std::uint64_t s = 0; s < 400; ++s) {
    const std::size_t n = (s % 3 + 1) * 3;
    const double pi = 0.1 + 0.05 * static_cast<double>(s % 7);
    const Hypergraph3 h = sample_h3(n, pi, RngSpec{101, s});
    const MatchResult r = perfect_matching_3uniform(h);
    ASSERT_NE(r.decision, Decision::kTimeout);
    const bool expected = brute_force_matching(h);
    ASSERT_EQ(r.decision == Decision::kYes, expected) << "seed " << s;
    if (expected) expect_valid_witness(h, r);
    yes += expected;
  }
  EXPECT_GT(yes, 40);
  EXPECT_LT(yes, 360);
}

TEST(Factor, MonotoneUnderAddingHyperedges) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Hypergraph3 h = sample_h3(9, 0.12, RngSpec{103, s});
    if (perfect_matching_3uniform(h).decision != Decision::kYes) continue;
    std::vector<Triple> more = h.hyperedges();
    const Triple extra{static_cast<Vertex>(s % 7), 7, 8};
    if (!h.contains(extra)) more.push_back(extra);
    EXPECT_EQ(perfect_matching_3uniform(Hypergraph3(9, more)).decision, Decision::kYes);
  }
}

TEST(Factor, MonotoneUnderAddingEdges) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Graph g = sample_gnp(9, 0.5, RngSpec{107, s});
    if (triangle_factor(g).decision != Decision::kYes) continue;
    std::vector<Edge> more = g.edges();
    const Edge extra{static_cast<Vertex>(s % 8), 8};
    if (!g.has_edge(extra[0], extra[1])) more.push_back(extra);
    EXPECT_EQ(triangle_factor(Graph(9, more)).decision, Decision::kYes);
  }
}

TEST(Factor, TimeoutIsReported) {
  // Triples stay inside parts of sizes 31 and 29, so no perfect matching
  // exists, but the search cannot see that quickly; a zero timeout fires at
  // the first clock check.
  std::vector<Triple> t;
  for (Vertex lo : {0u, 31u}) {
    const Vertex hi = lo == 0 ? 31 : 60;
    for (Vertex a = lo; a < hi; ++a)
      for (Vertex b = a + 1; b < hi; ++b)
        for (Vertex c = b + 1; c < hi; ++c) t.push_back({a, b, c});
  }
  const Hypergraph3 h(60, t);
  const MatchResult r = perfect_matching_3uniform(h, std::chrono::milliseconds(0));
  EXPECT_EQ(r.decision, Decision::kTimeout);
  EXPECT_TRUE(r.witness.empty());
  EXPECT_EQ(to_string(Decision::kTimeout), "timeout");
}

TEST(Factor, Thresholds) {
  const Thresholds t = theoretical_thresholds(1000);
  EXPECT_NEAR(t.p_star, std::cbrt(2 * std::log(1000.0)) / 100.0, 1e-15);
  EXPECT_NEAR(t.pi_star, 2 * std::log(1000.0) / 1e6, 1e-20);
  for (std::size_t n : {2, 3, 10, 60, 1000, 100000})
    EXPECT_NEAR(std::pow(theoretical_thresholds(n).p_star, 3), theoretical_thresholds(n).pi_star,
                1e-12 * theoretical_thresholds(n).pi_star);
  EXPECT_THROW(theoretical_thresholds(1), std::invalid_argument);
}
