#pragma once

#include <cstdint>
#include <vector>

#include "triple_couple/motifs.hpp"
#include "triple_couple/rng.hpp"
#include "triple_couple/structures.hpp"

namespace triple_couple {

// G(n,p): each of the C(n,2) pairs independently with probability p. Pairs are
// visited in lexicographic rank order with geometric skips, so the output is
// a pure function of (n, p, stream).
Graph sample_gnp(std::size_t n, double p, Rng& rng);
Graph sample_gnp(std::size_t n, double p, RngSpec spec);

// H_3(n,pi): each of the C(n,3) triples independently with probability pi.
Hypergraph3 sample_h3(std::size_t n, double pi, Rng& rng);
Hypergraph3 sample_h3(std::size_t n, double pi, RngSpec spec);

// Replace every hyperedge by a triangle.
Graph shadow(const Hypergraph3& h);

struct ConditionalOptions {
  // Triples known to be absent.
  std::vector<Triple> excluded;
  std::uint64_t rejection_budget = 1'000'000;
};

struct ConditionalSample {
  Hypergraph3 h;
  std::uint64_t rejections = 0;
};

// H' conditioned on its clean 3-cycles being exactly `allowed`: forced triples
// are included, excluded triples omitted, the rest are Bernoulli(pi), and the
// draw is repeated until no other clean 3-cycle appears.
//
// Throws std::invalid_argument when the clean cycles among the forced triples
// differ from `allowed` or forced and excluded overlap, and BudgetExceeded
// when the rejection budget runs out.
ConditionalSample sample_h3_conditional(std::size_t n, double pi,
                                        const std::vector<Triple>& forced,
                                        const std::vector<CleanCycle>& allowed,
                                        Rng& rng,
                                        const ConditionalOptions& options = {});

}  // namespace triple_couple
