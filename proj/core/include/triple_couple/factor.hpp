#pragma once

#include <chrono>
#include <cstdint>
#include <string_view>
#include <vector>

#include "triple_couple/structures.hpp"

namespace triple_couple {

enum class Decision { kYes, kNo, kTimeout };

std::string_view to_string(Decision d);

struct MatchResult {
  Decision decision = Decision::kNo;
  // n/3 disjoint triples covering every vertex when decision is kYes.
  std::vector<Triple> witness;
  std::uint64_t nodes = 0;
};

inline constexpr std::chrono::milliseconds kDefaultDecisionTimeout{10'000};

// Exact decision by backtracking. Branches on the uncovered vertex with the
// fewest hyperedges avoiding covered vertices and prunes as soon as one has
// none. n must be divisible by 3.
MatchResult perfect_matching_3uniform(const Hypergraph3& h,
                                      std::chrono::milliseconds timeout = kDefaultDecisionTimeout);

// Perfect matching in the hypergraph of triangles of g.
MatchResult triangle_factor(const Graph& g,
                            std::chrono::milliseconds timeout = kDefaultDecisionTimeout);

struct Thresholds {
  // (2 ln n)^(1/3) n^(-2/3)
  double p_star = 0.0;
  // 2 n^-2 ln n
  double pi_star = 0.0;
};

Thresholds theoretical_thresholds(std::size_t n);

}  // namespace triple_couple
