#include "triple_couple/structures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace triple_couple {

Graph::Graph(std::size_t n) : n_(n), offsets_(n + 1, 0) {}

Graph::Graph(std::size_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
  for (auto& e : edges_) {
    if (e[0] == e[1]) throw std::invalid_argument("graph: self-loop");
    if (e[0] >= n || e[1] >= n) {
      throw std::invalid_argument("graph: endpoint out of range");
    }
    if (e[0] > e[1]) std::swap(e[0], e[1]);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw std::invalid_argument("graph: duplicate edge");
  }
  offsets_.assign(n + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e[0] + 1];
    ++offsets_[e[1] + 1];
  }
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
  adjacency_.resize(2 * edges_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    adjacency_[fill[e[0]]++] = e[1];
    adjacency_[fill[e[1]]++] = e[0];
  }
  for (std::size_t u = 0; u < n; ++u) {
    std::sort(adjacency_.begin() + offsets_[u], adjacency_.begin() + offsets_[u + 1]);
  }
}

std::span<const Vertex> Graph::neighbors(Vertex u) const {
  return {adjacency_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_ || u == v) return false;
  auto a = neighbors(u);
  auto b = neighbors(v);
  if (a.size() > b.size()) {
    std::swap(a, b);
    std::swap(u, v);
  }
  return std::binary_search(a.begin(), a.end(), v);
}

bool Graph::contains_triangle(const Triple& t) const {
  return has_edge(t[0], t[1]) && has_edge(t[0], t[2]) && has_edge(t[1], t[2]);
}

Hypergraph3::Hypergraph3(std::size_t n) : n_(n), offsets_(n + 1, 0) {}

Hypergraph3::Hypergraph3(std::size_t n, std::vector<Triple> hyperedges)
    : n_(n), hyperedges_(std::move(hyperedges)) {
  for (auto& t : hyperedges_) {
    std::sort(t.begin(), t.end());
    if (t[0] == t[1] || t[1] == t[2]) {
      throw std::invalid_argument("hypergraph: repeated vertex in triple");
    }
    if (t[2] >= n) throw std::invalid_argument("hypergraph: vertex out of range");
  }
  std::sort(hyperedges_.begin(), hyperedges_.end());
  if (std::adjacent_find(hyperedges_.begin(), hyperedges_.end()) !=
      hyperedges_.end()) {
    throw std::invalid_argument("hypergraph: duplicate hyperedge");
  }
  offsets_.assign(n + 1, 0);
  for (const auto& t : hyperedges_) {
    for (Vertex v : t) ++offsets_[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
  incidence_.resize(3 * hyperedges_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::uint32_t i = 0; i < hyperedges_.size(); ++i) {
    for (Vertex v : hyperedges_[i]) incidence_[fill[v]++] = i;
  }
}

bool Hypergraph3::contains(const Triple& t) const {
  return std::binary_search(hyperedges_.begin(), hyperedges_.end(), t);
}

std::span<const std::uint32_t> Hypergraph3::incident(Vertex u) const {
  return {incidence_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
}

void ModelParams::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
  if (!(pi >= 0.0 && pi <= 1.0)) throw std::invalid_argument("pi must lie in [0,1]");
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
}

double default_pi(std::size_t n, double p, double delta, double eps_cap) {
  const double nd = static_cast<double>(n);
  double pi = p * p * p * (1.0 - std::pow(nd, -delta));
  if (eps_cap > 0.0) pi = std::min(pi, std::pow(nd, -2.0 + eps_cap));
  return std::clamp(pi, 0.0, 1.0);
}

}  // namespace triple_couple
