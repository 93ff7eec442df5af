#pragma once

#include <cstdint>
#include <random>

namespace qparl {

/// Seed mixer (splitmix64). Used to derive well-separated engine seeds
/// from a (master seed, stream index) pair.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic random stream over mt19937_64.
///
/// Uniform doubles are produced from the raw 64-bit output instead of
/// std::uniform_real_distribution, so sequences are bit-identical across
/// standard library implementations. Parallel consumers must each own a
/// substream; substreams derived from the same master seed with distinct
/// indices do not overlap in practice.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(mix_seed(seed)) {}

  static RandomStream substream(std::uint64_t master_seed, std::uint64_t index) {
    return RandomStream(mix_seed(master_seed) ^ mix_seed(index * 0x9e3779b97f4a7c15ULL + 1));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qparl
