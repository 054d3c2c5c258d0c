#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace triple_couple {

using Vertex = std::uint32_t;
// Canonical forms are sorted ascending.
using Edge = std::array<Vertex, 2>;
using Triple = std::array<Vertex, 3>;

Edge make_edge(Vertex u, Vertex v);
Triple make_triple(Vertex a, Vertex b, Vertex c);

// The three edges of the triangle spanned by a triple, in sorted order.
std::array<Edge, 3> triangle_edges(const Triple& t);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);
double binomial_real(std::uint64_t n, std::uint64_t k);

// Lexicographic ranks over sorted tuples of {0, ..., n-1}.
std::uint64_t pair_rank(std::uint64_t n, Vertex u, Vertex v);
Edge pair_unrank(std::uint64_t n, std::uint64_t rank);
std::uint64_t triple_rank(std::uint64_t n, const Triple& t);
Triple triple_unrank(std::uint64_t n, std::uint64_t rank);

// Advances a sorted triple to its lexicographic successor; false past the end.
bool next_triple(std::uint64_t n, Triple& t);

// Dense edge-rank lookup for small n (n <= 11 gives at most 55 pairs, so an
// edge set fits in one 64-bit mask).
class PairIndex {
 public:
  static constexpr std::size_t kMaxVertices = 11;

  explicit PairIndex(std::size_t n);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_pairs() const { return pairs_.size(); }
  int index(Vertex u, Vertex v) const { return table_[u * n_ + v]; }
  std::uint64_t bit(Vertex u, Vertex v) const {
    return std::uint64_t{1} << index(u, v);
  }
  std::uint64_t triangle_mask(const Triple& t) const;
  const Edge& pair(int idx) const { return pairs_[idx]; }

 private:
  std::size_t n_;
  std::vector<int> table_;
  std::vector<Edge> pairs_;
};

}  // namespace triple_couple
