#include "triple_couple/combinatorics.hpp"

#include <algorithm>
#include <stdexcept>

namespace triple_couple {

Edge make_edge(Vertex u, Vertex v) {
  if (u == v) throw std::invalid_argument("edge endpoints must differ");
  return u < v ? Edge{u, v} : Edge{v, u};
}

Triple make_triple(Vertex a, Vertex b, Vertex c) {
  Triple t{a, b, c};
  std::sort(t.begin(), t.end());
  if (t[0] == t[1] || t[1] == t[2]) {
    throw std::invalid_argument("triple vertices must be distinct");
  }
  return t;
}

std::array<Edge, 3> triangle_edges(const Triple& t) {
  return {Edge{t[0], t[1]}, Edge{t[0], t[2]}, Edge{t[1], t[2]}};
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

double binomial_real(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double result = 1.0;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return result;
}

std::uint64_t pair_rank(std::uint64_t n, Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return binomial(n, 2) - binomial(n - u, 2) + (v - u - 1);
}

Edge pair_unrank(std::uint64_t n, std::uint64_t rank) {
  Vertex u = 0;
  while (true) {
    const std::uint64_t block = n - u - 1;
    if (rank < block) return Edge{u, static_cast<Vertex>(u + 1 + rank)};
    rank -= block;
    ++u;
  }
}

std::uint64_t triple_rank(std::uint64_t n, const Triple& t) {
  const std::uint64_t a = t[0], b = t[1], c = t[2];
  return binomial(n, 3) - binomial(n - a, 3) + binomial(n - a - 1, 2) -
         binomial(n - b, 2) + (c - b - 1);
}

Triple triple_unrank(std::uint64_t n, std::uint64_t rank) {
  Vertex a = 0;
  while (true) {
    const std::uint64_t block = binomial(n - a - 1, 2);
    if (rank < block) break;
    rank -= block;
    ++a;
  }
  Vertex b = a + 1;
  while (true) {
    const std::uint64_t block = n - b - 1;
    if (rank < block) break;
    rank -= block;
    ++b;
  }
  return Triple{a, b, static_cast<Vertex>(b + 1 + rank)};
}

bool next_triple(std::uint64_t n, Triple& t) {
  if (t[2] + 1 < n) {
    ++t[2];
    return true;
  }
  if (t[1] + 2 < n) {
    ++t[1];
    t[2] = t[1] + 1;
    return true;
  }
  if (t[0] + 3 < n) {
    ++t[0];
    t[1] = t[0] + 1;
    t[2] = t[0] + 2;
    return true;
  }
  return false;
}

PairIndex::PairIndex(std::size_t n) : n_(n), table_(n * n, -1) {
  if (n > kMaxVertices) {
    throw std::invalid_argument("PairIndex supports at most 11 vertices");
  }
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const int idx = static_cast<int>(pairs_.size());
      table_[u * n + v] = idx;
      table_[v * n + u] = idx;
      pairs_.push_back(Edge{u, v});
    }
  }
}

std::uint64_t PairIndex::triangle_mask(const Triple& t) const {
  return bit(t[0], t[1]) | bit(t[0], t[2]) | bit(t[1], t[2]);
}

}  // namespace triple_couple
