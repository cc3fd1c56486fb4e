#pragma once

#include <cstdint>

#include "wsynth/normal.hpp"

namespace wsynth {

// SplitMix64; used to expand seeds and derive independent substream keys.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
};

// xoshiro256++ (Blackman/Vigna). Deterministic across platforms; all draws
// the model makes go through this generator so results do not depend on the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& w : s_) w = sm.next();
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform double strictly inside (0,1).
  double next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via the inverse CDF; keeps sampling reproducible.
  double next_normal() { return norm_ppf(next_uniform()); }

  // Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

// Counter-based stream split: the stream for ensemble member `index` depends
// only on (master_seed, index), so members can be generated in any order or
// in parallel with identical results.
inline std::uint64_t derive_stream_seed(std::uint64_t master_seed,
                                        std::uint64_t index) {
  SplitMix64 sm(master_seed ^ (0x9E3779B97F4A7C15ull * (index + 1)));
  sm.next();
  return sm.next();
}

}  // namespace wsynth
