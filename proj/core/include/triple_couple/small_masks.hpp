#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "triple_couple/combinatorics.hpp"
#include "triple_couple/motifs.hpp"

namespace triple_couple {

// A set of triples on at most 11 vertices (C(11,3) = 165 bits).
struct TripleSet {
  std::array<std::uint64_t, 3> words{};

  bool test(int r) const { return (words[r >> 6] >> (r & 63)) & 1; }
  void set(int r) { words[r >> 6] |= std::uint64_t{1} << (r & 63); }
  void reset(int r) { words[r >> 6] &= ~(std::uint64_t{1} << (r & 63)); }
};

// Precomputed incidence between edges, triples and clean cycles on a small
// vertex set. Edge sets are 64-bit masks indexed by PairIndex; triples are
// indexed by lexicographic rank.
class SmallUniverse {
 public:
  explicit SmallUniverse(std::size_t n);

  std::size_t num_vertices() const { return n_; }
  const PairIndex& pairs() const { return pairs_; }
  std::size_t num_edges() const { return pairs_.num_pairs(); }
  std::size_t num_triples() const { return triples_.size(); }
  const Triple& triple(int r) const { return triples_[r]; }
  int triple_index(const Triple& t) const;
  std::uint64_t triangle_mask(int r) const { return triangle_masks_[r]; }

  const std::vector<CleanCycle>& cycles() const { return cycles_; }
  int cycle_index(const CleanCycle& c) const;
  std::uint64_t cycle_edge_mask(int c) const { return cycle_masks_[c]; }
  const std::array<int, 3>& cycle_triples(int c) const { return cycle_triples_[c]; }
  // Cycles having triple r as one of their hyperedges.
  std::span<const int> cycles_with_hyperedge(int r) const;
  // Cycles whose nine edges share at least one edge with triangle r.
  std::span<const int> cycles_meeting_triangle(int r) const;

  std::uint64_t graph_mask(const Graph& g) const;
  Graph mask_to_graph(std::uint64_t mask) const;
  TripleSet triple_set(const Hypergraph3& h) const;
  Hypergraph3 to_hypergraph(const TripleSet& s) const;

  // Clean cycles contained in an edge set / a triple set.
  int count_cycles_in_graph(std::uint64_t mask) const;
  int count_cycles_in_hypergraph(const TripleSet& s) const;

 private:
  std::size_t n_;
  PairIndex pairs_;
  std::vector<Triple> triples_;
  std::vector<std::uint64_t> triangle_masks_;
  std::vector<CleanCycle> cycles_;
  std::vector<std::uint64_t> cycle_masks_;
  std::vector<std::array<int, 3>> cycle_triples_;
  std::vector<std::vector<int>> with_hyperedge_;
  std::vector<std::vector<int>> meeting_triangle_;
};

}  // namespace triple_couple
