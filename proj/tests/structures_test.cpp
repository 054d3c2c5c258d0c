#include <gtest/gtest.h>

#include <cmath>

#include "triple_couple/combinatorics.hpp"
#include "triple_couple/structures.hpp"

using namespace triple_couple;

TEST(Combinatorics, MakeEdgeAndTripleSort) {
  EXPECT_EQ(make_edge(5, 2), (Edge{2, 5}));
  EXPECT_EQ(make_triple(4, 1, 3), (Triple{1, 3, 4}));
  EXPECT_THROW(make_edge(3, 3), std::invalid_argument);
  EXPECT_THROW(make_triple(1, 2, 1), std::invalid_argument);
}

TEST(Combinatorics, Binomial) {
  EXPECT_EQ(binomial(6, 3), 20u);
  EXPECT_EQ(binomial(300, 3), 4455100u);
  EXPECT_EQ(binomial(3, 5), 0u);
  EXPECT_EQ(binomial(300, 6), 962822846700u);
  EXPECT_NEAR(binomial_real(300, 6), 962822846700.0, 1.0);
}

TEST(Combinatorics, PairRankRoundTrip) {
  const std::uint64_t n = 9;
  std::uint64_t expected = 0;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) {
      ASSERT_EQ(pair_rank(n, u, v), expected);
      ASSERT_EQ(pair_unrank(n, expected), (Edge{u, v}));
      ++expected;
    }
}

TEST(Combinatorics, TripleRankMatchesLexicographicOrder) {
  const std::uint64_t n = 10;
  Triple t{0, 1, 2};
  std::uint64_t r = 0;
  do {
    ASSERT_EQ(triple_rank(n, t), r);
    ASSERT_EQ(triple_unrank(n, r), t);
    ++r;
  } while (next_triple(n, t));
  EXPECT_EQ(r, binomial(n, 3));
}

TEST(Combinatorics, PairIndexBits) {
  PairIndex idx(6);
  EXPECT_EQ(idx.num_pairs(), 15u);
  EXPECT_EQ(idx.index(0, 1), idx.index(1, 0));
  EXPECT_EQ(std::popcount(idx.triangle_mask(Triple{0, 2, 4})), 3);
  EXPECT_EQ(idx.pair(idx.index(3, 5)), (Edge{3, 5}));
}

TEST(Graph, NormalizesAndQueries) {
  Graph g(4, {{2, 0}, {0, 1}, {1, 2}});
  EXPECT_EQ(g.num_edges(), 3u);
  EXPECT_TRUE(g.has_edge(0, 2));
  EXPECT_TRUE(g.has_edge(2, 0));
  EXPECT_FALSE(g.has_edge(0, 3));
  EXPECT_TRUE(g.contains_triangle(Triple{0, 1, 2}));
  EXPECT_EQ(g.degree(3), 0u);
  ASSERT_EQ(g.neighbors(0).size(), 2u);
  EXPECT_EQ(g.neighbors(0)[0], 1u);
  EXPECT_EQ(g.edges().front(), (Edge{0, 1}));
}

TEST(Graph, RejectsInvalidInput) {
  EXPECT_THROW(Graph(3, {{0, 0}}), std::invalid_argument);
  EXPECT_THROW(Graph(3, {{0, 3}}), std::invalid_argument);
  EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
}

TEST(Hypergraph, IncidenceAndContains) {
  Hypergraph3 h(6, {{3, 4, 5}, {0, 1, 2}, {0, 3, 4}});
  EXPECT_EQ(h.num_hyperedges(), 3u);
  EXPECT_TRUE(h.contains(Triple{0, 3, 4}));
  EXPECT_FALSE(h.contains(Triple{0, 1, 3}));
  EXPECT_EQ(h.degree(0), 2u);
  EXPECT_EQ(h.degree(5), 1u);
  for (auto i : h.incident(4)) {
    const Triple& t = h.hyperedges()[i];
    EXPECT_TRUE(t[0] == 4 || t[1] == 4 || t[2] == 4);
  }
  EXPECT_THROW(Hypergraph3(4, {{0, 1, 1}}), std::invalid_argument);
  EXPECT_THROW(Hypergraph3(4, {{0, 1, 4}}), std::invalid_argument);
  EXPECT_THROW(Hypergraph3(4, {{0, 1, 2}, {2, 1, 0}}), std::invalid_argument);
}

TEST(ModelParams, DefaultPiAndCap) {
  const double p = 0.3;
  EXPECT_NEAR(default_pi(7, p, 0.1, 0.1), p * p * p * (1 - std::pow(7.0, -0.1)), 1e-15);
  // At n = 300 the cap n^(-1.9) binds.
  const double p300 = 0.0452;
  EXPECT_NEAR(default_pi(300, p300, 0.1, 0.1), std::pow(300.0, -1.9), 1e-15);
  ModelParams mp{7, 0.3, 0.01};
  EXPECT_NO_THROW(mp.validate());
  mp.p = 1.5;
  EXPECT_THROW(mp.validate(), std::invalid_argument);
  mp = ModelParams{7, 0.3, -0.1};
  EXPECT_THROW(mp.validate(), std::invalid_argument);
}
