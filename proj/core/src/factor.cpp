#include "triple_couple/factor.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "triple_couple/motifs.hpp"

namespace triple_couple {

std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::kYes: return "yes";
    case Decision::kNo: return "no";
    case Decision::kTimeout: return "timeout";
  }
  return "unknown";
}

namespace {

struct TimedOut {};

class Matcher {
 public:
  Matcher(const Hypergraph3& h, std::chrono::milliseconds timeout)
      : h_(h),
        n_(h.num_vertices()),
        covered_(n_, 0),
        avail_(n_, 0),
        blocked_(h.num_hyperedges(), 0),
        deadline_(std::chrono::steady_clock::now() + timeout) {
    for (Vertex v = 0; v < n_; ++v) avail_[v] = static_cast<int>(h_.degree(v));
  }

  bool solve() {
    if (++nodes_ % 1024 == 0 && std::chrono::steady_clock::now() > deadline_) throw TimedOut{};
    Vertex pick = 0;
    int best = std::numeric_limits<int>::max();
    for (Vertex v = 0; v < n_; ++v) {
      if (covered_[v] || avail_[v] >= best) continue;
      best = avail_[v];
      pick = v;
      if (best == 0) return false;
    }
    if (best == std::numeric_limits<int>::max()) return true;

    for (std::uint32_t f : h_.incident(pick)) {
      if (blocked_[f]) continue;
      const Triple& t = h_.hyperedges()[f];
      cover(t);
      chosen_.push_back(t);
      if (solve()) return true;
      chosen_.pop_back();
      uncover(t);
    }
    return false;
  }

  std::vector<Triple>& chosen() { return chosen_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  void cover(const Triple& t) {
    for (Vertex x : t) {
      covered_[x] = 1;
      for (std::uint32_t f : h_.incident(x))
        if (blocked_[f]++ == 0)
          for (Vertex y : h_.hyperedges()[f]) --avail_[y];
    }
  }

  void uncover(const Triple& t) {
    for (auto it = t.rbegin(); it != t.rend(); ++it) {
      for (std::uint32_t f : h_.incident(*it))
        if (--blocked_[f] == 0)
          for (Vertex y : h_.hyperedges()[f]) ++avail_[y];
      covered_[*it] = 0;
    }
  }

  const Hypergraph3& h_;
  std::size_t n_;
  std::vector<char> covered_;
  std::vector<int> avail_;
  std::vector<int> blocked_;
  std::vector<Triple> chosen_;
  std::uint64_t nodes_ = 0;
  std::chrono::steady_clock::time_point deadline_;
};

}  // namespace

MatchResult perfect_matching_3uniform(const Hypergraph3& h, std::chrono::milliseconds timeout) {
  if (h.num_vertices() % 3 != 0)
    throw std::invalid_argument("perfect matching: n must be divisible by 3");
  MatchResult out;
  Matcher m(h, timeout);
  try {
    if (m.solve()) {
      out.decision = Decision::kYes;
      out.witness = std::move(m.chosen());
    } else {
      out.decision = Decision::kNo;
    }
  } catch (const TimedOut&) {
    out.decision = Decision::kTimeout;
  }
  out.nodes = m.nodes();
  return out;
}

MatchResult triangle_factor(const Graph& g, std::chrono::milliseconds timeout) {
  if (g.num_vertices() % 3 != 0)
    throw std::invalid_argument("triangle factor: n must be divisible by 3");
  return perfect_matching_3uniform(Hypergraph3(g.num_vertices(), enumerate_triangles(g)), timeout);
}

Thresholds theoretical_thresholds(std::size_t n) {
  if (n < 2) throw std::invalid_argument("theoretical_thresholds: n must be at least 2");
  const double nn = static_cast<double>(n);
  const double ln = std::log(nn);
  return {std::cbrt(2.0 * ln) * std::pow(nn, -2.0 / 3.0), 2.0 * ln / (nn * nn)};
}

}  // namespace triple_couple
