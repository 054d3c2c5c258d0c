#pragma once

#include <cstdint>
#include <limits>

namespace triple_couple {

// Identifies one reproducible random stream: a master seed plus a trial
// counter. Identical specs produce bit-identical sequences on every platform.
struct RngSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;

  RngSpec child(std::uint64_t sub_index) const;
};

// SplitMix64 finalizer (Stafford variant 13).
std::uint64_t mix64(std::uint64_t z);

// Advances `state` by the golden-ratio increment and returns the mixed value.
std::uint64_t splitmix64(std::uint64_t& state);

// Seed for a stream: mix64(master ^ mix64(stream + 0x9E3779B97F4A7C15)).
std::uint64_t derive_stream_seed(std::uint64_t master_seed,
                                 std::uint64_t stream_index);

// xoshiro256** seeded from derive_stream_seed through four SplitMix64 draws.
// All derived quantities (uniforms, Bernoulli trials, geometric skips) are
// computed here rather than through <random> distributions, whose outputs
// are implementation-defined.
class Rng {
 public:
  explicit Rng(RngSpec spec);

  std::uint64_t next();
  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform();
  bool bernoulli(double p) { return uniform() < p; }
  // Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  // Number of failures before the first success of Bernoulli(p) trials.
  // Returns max() when p <= 0.
  std::uint64_t geometric_skip(double p);
  // Poisson(lambda) by sequential inversion; intended for lambda <= ~50.
  std::uint64_t poisson(double lambda);

  static constexpr std::uint64_t kNever =
      std::numeric_limits<std::uint64_t>::max();

 private:
  std::uint64_t s_[4];
};

}  // namespace triple_couple
