#pragma once

#include <cstdint>
#include <stdexcept>

namespace reconlab {

// splitmix64 (Steele/Lea/Flood). Chosen over <random> engines so that every
// seeded result is reproducible bit-for-bit across platforms and standard
// library implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform width-bit value; width in [0, 64].
  std::uint64_t next_bits(unsigned width) {
    if (width > 64) throw std::invalid_argument("next_bits: width > 64");
    if (width == 0) return 0;
    return next() >> (64 - width);
  }

  /// Uniform in [0, bound), bound >= 1. Masked rejection, no modulo bias.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
    if (bound == 1) return 0;
    unsigned width = 64 - static_cast<unsigned>(__builtin_clzll(bound - 1));
    std::uint64_t v;
    do {
      v = next_bits(width);
    } while (v >= bound);
    return v;
  }

 private:
  std::uint64_t state_;
};

/// Seed for an independent stream derived from (seed, tag). Used to hand
/// per-round, per-trial, or per-party generators out of one shared seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
  SplitMix64 g(seed ^ (0x632be59bd9b4e019ULL * (tag + 1)));
  return g.next();
}

}  // namespace reconlab
