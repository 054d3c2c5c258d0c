#pragma once

#include <array>
#include <compare>
#include <optional>
#include <span>
#include <vector>

#include "triple_couple/structures.hpp"

namespace triple_couple {

// Three hyperedges {m0,m1,o0}, {m1,m2,o1}, {m2,m0,o2} on six distinct
// vertices; each pair of hyperedges meets in exactly one vertex, and the three
// meeting vertices form the middle triple (which is not itself a hyperedge of
// the cycle).
struct CleanCycle {
  std::array<Vertex, 3> middle{};
  std::array<Vertex, 3> outer{};

  // Throws std::invalid_argument unless the six vertices are distinct.
  static CleanCycle make(std::array<Vertex, 3> middle, std::array<Vertex, 3> outer);

  // Lexicographically least (middle, outer) encoding over the six symmetries
  // (three rotations times reflection). Idempotent.
  CleanCycle canonical() const;
  std::array<Triple, 3> hyperedges() const;
  std::array<Vertex, 6> vertices() const;
  bool is_valid() const;

  auto operator<=>(const CleanCycle&) const = default;
};

// A clean cycle drawn uniformly from all 120 * C(n,6) cycles on n vertices.
class Rng;
CleanCycle uniform_clean_cycle(std::size_t n, Rng& rng);

// Every clean cycle on vertex set {0..n-1}, canonical and sorted.
std::vector<CleanCycle> all_clean_cycles(std::size_t n);

// Triples spanning three mutual edges, sorted. Uses sorted adjacency
// intersection over forward neighbours.
std::vector<Triple> enumerate_triangles(const Graph& g);

// Canonical, sorted, duplicate-free.
std::vector<CleanCycle> clean_cycles_in_hypergraph(const Hypergraph3& h);
std::vector<CleanCycle> clean_cycles_in_graph(const Graph& g);
std::size_t count_clean_cycles(const Hypergraph3& h);

// The nine shadow edges of the cycle, sorted.
std::vector<Edge> cycle_edge_set(const CleanCycle& c);
Triple middle_triangle(const CleanCycle& c);

struct AvoidabilityReport {
  std::vector<Vertex> vertices;
  std::vector<Triple> hyperedges;
  int v = 0;
  int e = 0;
  int c = 0;
  // 2e - v + c for a 3-uniform sub-hypergraph.
  int nullity = 0;
};

// Counts for an explicit sub-hypergraph. Throws on an empty edge list.
AvoidabilityReport nullity(std::span<const Triple> h0);

// Smallest connected sub-hypergraph with at most `max_edges` hyperedges and
// nullity >= 2, if any. Connected edge sets are enumerated once each
// (ESU-style extension over the hyperedge intersection graph) in order of
// increasing size.
//
// This nullity criterion stands in for the full definition of an avoidable
// configuration, which is not reproduced here; the interface does not depend
// on it.
std::optional<AvoidabilityReport> find_avoidable(const Hypergraph3& h,
                                                 int max_edges = 6);

struct DegreeCap {
  int cap = 1;
};

// max(ceil((ln n)^2), 3).
DegreeCap default_degree_cap(std::size_t n);

int max_hyperdegree(const Hypergraph3& h);
bool check_degree_cap(const Hypergraph3& h, DegreeCap cap);

// Triangles T of shadow(h) that are not hyperedges, are not the middle triple
// of a clean cycle in h, and coexist with no avoidable configuration in h.
// Empty on every input if the structural lemma holds.
std::vector<Triple> check_triangle_lemma(const Hypergraph3& h, int max_edges = 6);

}  // namespace triple_couple
