#include "triple_couple/motifs.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "triple_couple/rng.hpp"
#include "triple_couple/sampling.hpp"

namespace triple_couple {

namespace {

std::uint64_t pair_key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

using PairOuters = std::unordered_map<std::uint64_t, std::vector<Vertex>>;

PairOuters build_pair_outers(const std::vector<Triple>& triples) {
  PairOuters outers;
  outers.reserve(3 * triples.size());
  for (const auto& t : triples) {
    outers[pair_key(t[0], t[1])].push_back(t[2]);
    outers[pair_key(t[0], t[2])].push_back(t[1]);
    outers[pair_key(t[1], t[2])].push_back(t[0]);
  }
  return outers;
}

// Calls emit(middle, outer) for every clean cycle whose hyperedges all lie in
// `triples`, once per cycle (middle given in sorted order).
template <typename Emit>
void for_each_cycle(std::size_t n, const std::vector<Triple>& triples, Emit&& emit) {
  if (triples.size() < 3) return;
  const PairOuters outers = build_pair_outers(triples);
  std::vector<Edge> shadow_edges;
  shadow_edges.reserve(outers.size());
  for (const auto& [key, _] : outers) {
    shadow_edges.push_back(Edge{static_cast<Vertex>(key >> 32),
                                static_cast<Vertex>(key & 0xffffffffu)});
  }
  const Graph sh(n, std::move(shadow_edges));
  static const std::vector<Vertex> kEmpty;
  auto lookup = [&](Vertex u, Vertex v) -> const std::vector<Vertex>& {
    auto it = outers.find(pair_key(u, v));
    return it == outers.end() ? kEmpty : it->second;
  };
  for (const auto& m : enumerate_triangles(sh)) {
    const auto& xs = lookup(m[0], m[1]);
    const auto& ys = lookup(m[1], m[2]);
    const auto& zs = lookup(m[2], m[0]);
    for (Vertex x : xs) {
      if (x == m[2]) continue;
      for (Vertex y : ys) {
        if (y == m[0] || y == x) continue;
        for (Vertex z : zs) {
          if (z == m[1] || z == x || z == y) continue;
          emit(m, std::array<Vertex, 3>{x, y, z});
        }
      }
    }
  }
}

}  // namespace

CleanCycle CleanCycle::make(std::array<Vertex, 3> middle, std::array<Vertex, 3> outer) {
  CleanCycle c{middle, outer};
  if (!c.is_valid()) throw std::invalid_argument("clean cycle needs six distinct vertices");
  return c;
}

bool CleanCycle::is_valid() const {
  auto vs = vertices();
  std::sort(vs.begin(), vs.end());
  return std::adjacent_find(vs.begin(), vs.end()) == vs.end();
}

CleanCycle CleanCycle::canonical() const {
  const auto& m = middle;
  const auto& o = outer;
  const std::array<CleanCycle, 6> images = {
      CleanCycle{{m[0], m[1], m[2]}, {o[0], o[1], o[2]}},
      CleanCycle{{m[1], m[2], m[0]}, {o[1], o[2], o[0]}},
      CleanCycle{{m[2], m[0], m[1]}, {o[2], o[0], o[1]}},
      CleanCycle{{m[0], m[2], m[1]}, {o[2], o[1], o[0]}},
      CleanCycle{{m[2], m[1], m[0]}, {o[1], o[0], o[2]}},
      CleanCycle{{m[1], m[0], m[2]}, {o[0], o[2], o[1]}},
  };
  return *std::min_element(images.begin(), images.end());
}

std::array<Triple, 3> CleanCycle::hyperedges() const {
  return {make_triple(middle[0], middle[1], outer[0]),
          make_triple(middle[1], middle[2], outer[1]),
          make_triple(middle[2], middle[0], outer[2])};
}

std::array<Vertex, 6> CleanCycle::vertices() const {
  return {middle[0], middle[1], middle[2], outer[0], outer[1], outer[2]};
}

CleanCycle uniform_clean_cycle(std::size_t n, Rng& rng) {
  if (n < 6) throw std::invalid_argument("clean cycles need at least 6 vertices");
  std::array<Vertex, 6> v{};
  for (int i = 0; i < 6; ++i) {
    while (true) {
      const auto cand = static_cast<Vertex>(rng.below(n));
      if (std::find(v.begin(), v.begin() + i, cand) == v.begin() + i) {
        v[i] = cand;
        break;
      }
    }
  }
  return CleanCycle{{v[0], v[1], v[2]}, {v[3], v[4], v[5]}}.canonical();
}

std::vector<CleanCycle> all_clean_cycles(std::size_t n) {
  std::vector<CleanCycle> out;
  if (n < 6) return out;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      for (Vertex c = b + 1; c < n; ++c) {
        for (Vertex x = 0; x < n; ++x) {
          if (x == a || x == b || x == c) continue;
          for (Vertex y = 0; y < n; ++y) {
            if (y == a || y == b || y == c || y == x) continue;
            for (Vertex z = 0; z < n; ++z) {
              if (z == a || z == b || z == c || z == x || z == y) continue;
              out.push_back(CleanCycle{{a, b, c}, {x, y, z}}.canonical());
            }
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Triple> enumerate_triangles(const Graph& g) {
  std::vector<Triple> out;
  std::vector<Vertex> common;
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    const auto nu = g.neighbors(u);
    auto fu = std::upper_bound(nu.begin(), nu.end(), u);
    for (auto it = fu; it != nu.end(); ++it) {
      const Vertex v = *it;
      const auto nv = g.neighbors(v);
      auto fv = std::upper_bound(nv.begin(), nv.end(), v);
      common.clear();
      std::set_intersection(it + 1, nu.end(), fv, nv.end(), std::back_inserter(common));
      for (Vertex w : common) out.push_back(Triple{u, v, w});
    }
  }
  return out;
}

std::vector<CleanCycle> clean_cycles_in_hypergraph(const Hypergraph3& h) {
  std::vector<CleanCycle> out;
  for_each_cycle(h.num_vertices(), h.hyperedges(),
                 [&](const Triple& m, const std::array<Vertex, 3>& o) {
                   out.push_back(CleanCycle{{m[0], m[1], m[2]}, o}.canonical());
                 });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t count_clean_cycles(const Hypergraph3& h) {
  std::size_t count = 0;
  for_each_cycle(h.num_vertices(), h.hyperedges(),
                 [&](const Triple&, const std::array<Vertex, 3>&) { ++count; });
  return count;
}

std::vector<CleanCycle> clean_cycles_in_graph(const Graph& g) {
  return clean_cycles_in_hypergraph(Hypergraph3(g.num_vertices(), enumerate_triangles(g)));
}

std::vector<Edge> cycle_edge_set(const CleanCycle& c) {
  std::vector<Edge> edges;
  edges.reserve(9);
  for (const auto& t : c.hyperedges()) {
    for (const auto& e : triangle_edges(t)) edges.push_back(e);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

Triple middle_triangle(const CleanCycle& c) {
  return make_triple(c.middle[0], c.middle[1], c.middle[2]);
}

AvoidabilityReport nullity(std::span<const Triple> h0) {
  if (h0.empty()) throw std::invalid_argument("nullity: empty sub-hypergraph");
  AvoidabilityReport report;
  report.hyperedges.assign(h0.begin(), h0.end());
  std::sort(report.hyperedges.begin(), report.hyperedges.end());
  for (const auto& t : h0) report.vertices.insert(report.vertices.end(), t.begin(), t.end());
  std::sort(report.vertices.begin(), report.vertices.end());
  report.vertices.erase(std::unique(report.vertices.begin(), report.vertices.end()),
                        report.vertices.end());

  // Union-find over the local vertex list.
  std::vector<int> parent(report.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  auto local = [&](Vertex v) {
    return static_cast<int>(std::lower_bound(report.vertices.begin(),
                                             report.vertices.end(), v) -
                            report.vertices.begin());
  };
  for (const auto& t : h0) {
    const int r = find(local(t[0]));
    parent[find(local(t[1]))] = r;
    parent[find(local(t[2]))] = r;
  }
  int components = 0;
  for (int i = 0; i < static_cast<int>(parent.size()); ++i) components += find(i) == i;

  report.v = static_cast<int>(report.vertices.size());
  report.e = static_cast<int>(report.hyperedges.size());
  report.c = components;
  report.nullity = 2 * report.e - report.v + report.c;
  return report;
}

namespace {

class AvoidableSearch {
 public:
  AvoidableSearch(const Hypergraph3& h) : h_(h), adj_(h.num_hyperedges()) {
    const auto& edges = h.hyperedges();
    for (std::uint32_t i = 0; i < edges.size(); ++i) {
      for (Vertex v : edges[i]) {
        for (std::uint32_t j : h.incident(v)) {
          if (j != i) adj_[i].push_back(j);
        }
      }
      std::sort(adj_[i].begin(), adj_[i].end());
      adj_[i].erase(std::unique(adj_[i].begin(), adj_[i].end()), adj_[i].end());
    }
    vertex_use_.assign(h.num_vertices(), 0);
    in_sub_.assign(edges.size(), 0);
    near_sub_.assign(edges.size(), 0);
  }

  std::optional<AvoidabilityReport> run(int size) {
    target_ = size;
    for (std::uint32_t root = 0; root < adj_.size(); ++root) {
      root_ = root;
      std::vector<std::uint32_t> ext;
      for (std::uint32_t u : adj_[root]) {
        if (u > root) ext.push_back(u);
      }
      push(root);
      const bool found = extend(ext);
      if (found) {
        auto report = nullity(std::span<const Triple>(witness_));
        return report;
      }
      pop(root);
    }
    return std::nullopt;
  }

 private:
  void push(std::uint32_t e) {
    sub_.push_back(e);
    in_sub_[e] = 1;
    for (Vertex v : h_.hyperedges()[e]) {
      if (vertex_use_[v]++ == 0) ++num_vertices_;
    }
    ++near_sub_[e];
    for (std::uint32_t u : adj_[e]) ++near_sub_[u];
  }

  void pop(std::uint32_t e) {
    sub_.pop_back();
    in_sub_[e] = 0;
    for (Vertex v : h_.hyperedges()[e]) {
      if (--vertex_use_[v] == 0) --num_vertices_;
    }
    --near_sub_[e];
    for (std::uint32_t u : adj_[e]) --near_sub_[u];
  }

  // The current set is connected, so its nullity is 2e - v + 1.
  int current_nullity() const {
    return 2 * static_cast<int>(sub_.size()) - num_vertices_ + 1;
  }

  bool extend(std::vector<std::uint32_t> ext) {
    const int k = static_cast<int>(sub_.size());
    if (k == target_) {
      if (current_nullity() >= 2) {
        witness_.clear();
        for (auto e : sub_) witness_.push_back(h_.hyperedges()[e]);
        return true;
      }
      return false;
    }
    if (current_nullity() + 2 * (target_ - k) < 2) return false;
    while (!ext.empty()) {
      const std::uint32_t w = ext.back();
      ext.pop_back();
      std::vector<std::uint32_t> next = ext;
      // Exclusive neighbourhood of w: not in, and not adjacent to, the set.
      for (std::uint32_t u : adj_[w]) {
        if (u > root_ && near_sub_[u] == 0) next.push_back(u);
      }
      push(w);
      if (extend(std::move(next))) return true;
      pop(w);
    }
    return false;
  }

  const Hypergraph3& h_;
  std::vector<std::vector<std::uint32_t>> adj_;
  std::vector<int> vertex_use_;
  std::vector<char> in_sub_;
  std::vector<int> near_sub_;
  std::vector<std::uint32_t> sub_;
  std::vector<Triple> witness_;
  int num_vertices_ = 0;
  int target_ = 0;
  std::uint32_t root_ = 0;
};

}  // namespace

std::optional<AvoidabilityReport> find_avoidable(const Hypergraph3& h, int max_edges) {
  if (max_edges < 2) throw std::invalid_argument("find_avoidable: max_edges must be >= 2");
  if (h.num_hyperedges() < 2) return std::nullopt;
  for (int size = 2; size <= max_edges; ++size) {
    AvoidableSearch search(h);
    if (auto report = search.run(size)) return report;
  }
  return std::nullopt;
}

DegreeCap default_degree_cap(std::size_t n) {
  const double ln = std::log(static_cast<double>(std::max<std::size_t>(n, 1)));
  return DegreeCap{std::max(static_cast<int>(std::ceil(ln * ln)), 3)};
}

int max_hyperdegree(const Hypergraph3& h) {
  std::size_t best = 0;
  for (Vertex v = 0; v < h.num_vertices(); ++v) best = std::max(best, h.degree(v));
  return static_cast<int>(best);
}

bool check_degree_cap(const Hypergraph3& h, DegreeCap cap) {
  return max_hyperdegree(h) <= cap.cap;
}

std::vector<Triple> check_triangle_lemma(const Hypergraph3& h, int max_edges) {
  std::vector<Triple> violations;
  std::vector<Triple> middles;
  for (const auto& c : clean_cycles_in_hypergraph(h)) middles.push_back(middle_triangle(c));
  std::sort(middles.begin(), middles.end());
  std::optional<bool> avoidable;
  for (const auto& t : enumerate_triangles(shadow(h))) {
    if (h.contains(t)) continue;
    if (std::binary_search(middles.begin(), middles.end(), t)) continue;
    if (!avoidable) avoidable = find_avoidable(h, max_edges).has_value();
    if (!*avoidable) violations.push_back(t);
  }
  return violations;
}

}  // namespace triple_couple
