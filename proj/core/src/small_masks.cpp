#include "triple_couple/small_masks.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace triple_couple {

namespace {

// Ordered triples (x, y, z) with x in X, y in Y, z in Z, pairwise distinct.
inline int distinct_choices(std::uint32_t X, std::uint32_t Y, std::uint32_t Z) {
  const int x = std::popcount(X), y = std::popcount(Y), z = std::popcount(Z);
  const int xy = std::popcount(X & Y), xz = std::popcount(X & Z), yz = std::popcount(Y & Z);
  const int xyz = std::popcount(X & Y & Z);
  return x * y * z - xy * z - xz * y - yz * x + 2 * xyz;
}

}  // namespace

SmallUniverse::SmallUniverse(std::size_t n) : n_(n), pairs_(n) {
  if (n >= 3) {
    Triple t{0, 1, 2};
    do {
      triples_.push_back(t);
    } while (next_triple(n, t));
  }
  for (const auto& t : triples_) triangle_masks_.push_back(pairs_.triangle_mask(t));

  cycles_ = all_clean_cycles(n);
  with_hyperedge_.resize(triples_.size());
  meeting_triangle_.resize(triples_.size());
  for (int c = 0; c < static_cast<int>(cycles_.size()); ++c) {
    std::uint64_t mask = 0;
    std::array<int, 3> idx{};
    const auto hs = cycles_[c].hyperedges();
    for (int k = 0; k < 3; ++k) {
      idx[k] = triple_index(hs[k]);
      mask |= triangle_masks_[idx[k]];
      with_hyperedge_[idx[k]].push_back(c);
    }
    cycle_masks_.push_back(mask);
    cycle_triples_.push_back(idx);
  }
  for (int r = 0; r < static_cast<int>(triples_.size()); ++r) {
    for (int c = 0; c < static_cast<int>(cycles_.size()); ++c) {
      if (cycle_masks_[c] & triangle_masks_[r]) meeting_triangle_[r].push_back(c);
    }
  }
}

int SmallUniverse::triple_index(const Triple& t) const {
  return static_cast<int>(triple_rank(n_, t));
}

int SmallUniverse::cycle_index(const CleanCycle& c) const {
  const auto canon = c.canonical();
  auto it = std::lower_bound(cycles_.begin(), cycles_.end(), canon);
  if (it == cycles_.end() || *it != canon) throw std::invalid_argument("unknown clean cycle");
  return static_cast<int>(it - cycles_.begin());
}

std::span<const int> SmallUniverse::cycles_with_hyperedge(int r) const {
  return with_hyperedge_[r];
}

std::span<const int> SmallUniverse::cycles_meeting_triangle(int r) const {
  return meeting_triangle_[r];
}

std::uint64_t SmallUniverse::graph_mask(const Graph& g) const {
  std::uint64_t mask = 0;
  for (const auto& e : g.edges()) mask |= pairs_.bit(e[0], e[1]);
  return mask;
}

Graph SmallUniverse::mask_to_graph(std::uint64_t mask) const {
  std::vector<Edge> edges;
  for (std::uint64_t m = mask; m; m &= m - 1) edges.push_back(pairs_.pair(std::countr_zero(m)));
  return Graph(n_, std::move(edges));
}

TripleSet SmallUniverse::triple_set(const Hypergraph3& h) const {
  TripleSet s;
  for (const auto& t : h.hyperedges()) s.set(triple_index(t));
  return s;
}

Hypergraph3 SmallUniverse::to_hypergraph(const TripleSet& s) const {
  std::vector<Triple> ts;
  for (int r = 0; r < static_cast<int>(triples_.size()); ++r) {
    if (s.test(r)) ts.push_back(triples_[r]);
  }
  return Hypergraph3(n_, std::move(ts));
}

int SmallUniverse::count_cycles_in_graph(std::uint64_t mask) const {
  std::array<std::uint32_t, PairIndex::kMaxVertices> adj{};
  for (std::uint64_t m = mask; m; m &= m - 1) {
    const Edge& e = pairs_.pair(std::countr_zero(m));
    adj[e[0]] |= 1u << e[1];
    adj[e[1]] |= 1u << e[0];
  }
  int count = 0;
  for (Vertex a = 0; a < n_; ++a) {
    for (std::uint32_t bs = adj[a] >> (a + 1) << (a + 1); bs; bs &= bs - 1) {
      const Vertex b = std::countr_zero(bs);
      const std::uint32_t ab = adj[a] & adj[b];
      for (std::uint32_t cs = ab >> (b + 1) << (b + 1); cs; cs &= cs - 1) {
        const Vertex c = std::countr_zero(cs);
        count += distinct_choices(ab & ~(1u << c), adj[b] & adj[c] & ~(1u << a),
                                  adj[c] & adj[a] & ~(1u << b));
      }
    }
  }
  return count;
}

int SmallUniverse::count_cycles_in_hypergraph(const TripleSet& s) const {
  std::array<std::uint32_t, 64> outer{};
  bool any = false;
  for (int w = 0; w < 3; ++w) {
    for (std::uint64_t m = s.words[w]; m; m &= m - 1) {
      const Triple& t = triples_[w * 64 + std::countr_zero(m)];
      outer[pairs_.index(t[0], t[1])] |= 1u << t[2];
      outer[pairs_.index(t[0], t[2])] |= 1u << t[1];
      outer[pairs_.index(t[1], t[2])] |= 1u << t[0];
      any = true;
    }
  }
  if (!any) return 0;
  int count = 0;
  for (const auto& t : triples_) {
    const std::uint32_t ab = outer[pairs_.index(t[0], t[1])];
    const std::uint32_t bc = outer[pairs_.index(t[1], t[2])];
    const std::uint32_t ca = outer[pairs_.index(t[0], t[2])];
    if (!ab || !bc || !ca) continue;
    count += distinct_choices(ab & ~(1u << t[2]), bc & ~(1u << t[0]), ca & ~(1u << t[1]));
  }
  return count;
}

}  // namespace triple_couple
