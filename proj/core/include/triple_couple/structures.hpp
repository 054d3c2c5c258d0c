#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "triple_couple/combinatorics.hpp"

namespace triple_couple {

// Simple undirected graph on vertices 0..n-1. Immutable after construction.
class Graph {
 public:
  explicit Graph(std::size_t n = 0);
  // Throws std::invalid_argument on self-loops, out-of-range endpoints or
  // duplicate edges.
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  bool has_edge(Vertex u, Vertex v) const;
  bool contains_triangle(const Triple& t) const;
  std::span<const Vertex> neighbors(Vertex u) const;
  std::size_t degree(Vertex u) const { return neighbors(u).size(); }
  // Sorted lexicographically.
  const std::vector<Edge>& edges() const { return edges_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adjacency_;
};

// 3-uniform hypergraph on vertices 0..n-1. Immutable after construction.
class Hypergraph3 {
 public:
  explicit Hypergraph3(std::size_t n = 0);
  // Throws std::invalid_argument on repeated vertices, out-of-range vertices
  // or duplicate triples.
  Hypergraph3(std::size_t n, std::vector<Triple> hyperedges);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_hyperedges() const { return hyperedges_.size(); }
  bool contains(const Triple& t) const;
  // Sorted lexicographically.
  const std::vector<Triple>& hyperedges() const { return hyperedges_; }
  // Indices into hyperedges() of the hyperedges containing u.
  std::span<const std::uint32_t> incident(Vertex u) const;
  std::size_t degree(Vertex u) const { return incident(u).size(); }

  friend bool operator==(const Hypergraph3& a, const Hypergraph3& b) {
    return a.n_ == b.n_ && a.hyperedges_ == b.hyperedges_;
  }

 private:
  std::size_t n_;
  std::vector<Triple> hyperedges_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> incidence_;
};

// Free parameters of one coupling experiment. `pi` is usually derived through
// default_pi(); delta and epsilon must be positive.
struct ModelParams {
  std::size_t n = 0;
  double p = 0.0;
  double pi = 0.0;
  double delta = 0.1;
  double epsilon = 0.1;

  void validate() const;
};

// pi = p^3 (1 - n^-delta), capped at n^(-2 + eps_cap) when eps_cap > 0.
double default_pi(std::size_t n, double p, double delta, double eps_cap);

}  // namespace triple_couple
