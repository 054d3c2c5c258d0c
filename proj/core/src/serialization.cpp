#include "triple_couple/serialization.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace triple_couple {

namespace {

struct RawStructure {
  std::size_t n = 0;
  std::size_t arity = 0;
  std::vector<std::vector<Vertex>> rows;
};

std::vector<Vertex> parse_row(const std::string& line, std::size_t line_no) {
  std::vector<Vertex> row;
  const char* p = line.data();
  const char* end = p + line.size();
  while (p < end) {
    while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    if (p == end) break;
    Vertex v = 0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc()) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": expected a vertex index");
    }
    row.push_back(v);
    p = next;
  }
  return row;
}

RawStructure read_raw(std::istream& in) {
  RawStructure raw;
  std::string line;
  bool have_header = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (!have_header) {
      if (line.rfind("n=", 0) != 0) {
        throw std::invalid_argument("missing 'n=<int>' header");
      }
      std::size_t n = 0;
      auto [ptr, ec] = std::from_chars(line.data() + 2, line.data() + line.size(), n);
      if (ec != std::errc()) throw std::invalid_argument("malformed 'n=' header");
      raw.n = n;
      have_header = true;
      continue;
    }
    auto row = parse_row(line, line_no);
    if (row.empty()) continue;
    if (raw.arity == 0) raw.arity = row.size();
    if (row.size() != raw.arity || (raw.arity != 2 && raw.arity != 3)) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": expected 2 or 3 vertices consistently");
    }
    raw.rows.push_back(std::move(row));
  }
  if (!have_header) throw std::invalid_argument("empty input");
  return raw;
}

Graph to_graph(const RawStructure& raw) {
  std::vector<Edge> edges;
  edges.reserve(raw.rows.size());
  for (const auto& r : raw.rows) edges.push_back(Edge{r[0], r[1]});
  return Graph(raw.n, std::move(edges));
}

Hypergraph3 to_hypergraph(const RawStructure& raw) {
  std::vector<Triple> triples;
  triples.reserve(raw.rows.size());
  for (const auto& r : raw.rows) triples.push_back(Triple{r[0], r[1], r[2]});
  return Hypergraph3(raw.n, std::move(triples));
}

}  // namespace

void write_graph(std::ostream& out, const Graph& g) {
  out << "n=" << g.num_vertices() << '\n';
  for (const auto& e : g.edges()) out << e[0] << ' ' << e[1] << '\n';
}

void write_hypergraph(std::ostream& out, const Hypergraph3& h) {
  out << "n=" << h.num_vertices() << '\n';
  for (const auto& t : h.hyperedges()) {
    out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  }
}

std::string to_text(const Graph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

std::string to_text(const Hypergraph3& h) {
  std::ostringstream out;
  write_hypergraph(out, h);
  return out.str();
}

Graph read_graph(std::istream& in) {
  auto raw = read_raw(in);
  if (raw.arity == 3) throw std::invalid_argument("expected a graph, found triples");
  return to_graph(raw);
}

Hypergraph3 read_hypergraph(std::istream& in) {
  auto raw = read_raw(in);
  if (raw.arity == 2) throw std::invalid_argument("expected a hypergraph, found pairs");
  return to_hypergraph(raw);
}

std::variant<Graph, Hypergraph3> read_structure(std::istream& in) {
  auto raw = read_raw(in);
  if (raw.arity == 3) return to_hypergraph(raw);
  return to_graph(raw);
}

std::variant<Graph, Hypergraph3> read_structure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return read_structure(in);
}

}  // namespace triple_couple
