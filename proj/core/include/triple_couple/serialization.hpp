#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "triple_couple/structures.hpp"

namespace triple_couple {

// Line-oriented text format:
//
//   n=<int>
//   u v        (one edge per line), or
//   u v w      (one hyperedge per line)
//
// Vertices are 0-based and tuples are written sorted, in lexicographic order.
// Lines starting with '#' are comments and are skipped by the readers.
void write_graph(std::ostream& out, const Graph& g);
void write_hypergraph(std::ostream& out, const Hypergraph3& h);
std::string to_text(const Graph& g);
std::string to_text(const Hypergraph3& h);

// Throw std::invalid_argument on malformed input.
Graph read_graph(std::istream& in);
Hypergraph3 read_hypergraph(std::istream& in);

// Detects the arity from the first data line; an empty body parses as a graph.
std::variant<Graph, Hypergraph3> read_structure(std::istream& in);
std::variant<Graph, Hypergraph3> read_structure_file(const std::string& path);

}  // namespace triple_couple
