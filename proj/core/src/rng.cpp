#include "triple_couple/rng.hpp"

#include <cmath>

namespace triple_couple {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}
}  // namespace

RngSpec RngSpec::child(std::uint64_t sub_index) const {
  return RngSpec{derive_stream_seed(master_seed, stream_index), sub_index};
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t splitmix64(std::uint64_t& state) {
  state += kGolden;
  return mix64(state);
}

std::uint64_t derive_stream_seed(std::uint64_t master_seed,
                                 std::uint64_t stream_index) {
  return mix64(master_seed ^ mix64(stream_index + kGolden));
}

Rng::Rng(RngSpec spec) {
  std::uint64_t state = derive_stream_seed(spec.master_seed, spec.stream_index);
  for (auto& word : s_) word = splitmix64(state);
}

std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t bound) {
  // Lemire's multiply-shift with rejection of the biased low range.
  unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::uint64_t Rng::geometric_skip(double p) {
  if (p >= 1.0) {
    next();
    return 0;
  }
  if (p <= 0.0) return kNever;
  const double u = uniform();
  const double k = std::floor(std::log1p(-u) / std::log1p(-p));
  if (!(k < 1.8e19)) return kNever;
  return static_cast<std::uint64_t>(k);
}

std::uint64_t Rng::poisson(double lambda) {
  if (lambda <= 0.0) return 0;
  const double u = uniform();
  double pmf = std::exp(-lambda);
  double cdf = pmf;
  std::uint64_t k = 0;
  while (u >= cdf) {
    ++k;
    pmf *= lambda / static_cast<double>(k);
    cdf += pmf;
    if (pmf < 1e-300 && static_cast<double>(k) > lambda) break;
  }
  return k;
}

}  // namespace triple_couple
