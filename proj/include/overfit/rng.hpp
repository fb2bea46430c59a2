#pragma once

#include <cstdint>

namespace overfit {

/// SplitMix64 used in counter mode: value k of stream `seed` is
/// mix(seed + (k + 1) * 0x9E3779B97F4A7C15). Any value is addressable
/// directly, so the partition of work across threads never changes results.
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t seed) : seed_(seed) {}

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  constexpr std::uint64_t bits(std::uint64_t counter) const {
    return mix(seed_ + (counter + 1) * 0x9E3779B97F4A7C15ULL);
  }

  /// Uniform in [0, 1) with 53 random bits.
  constexpr double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [lo, hi]; the span must be far below 2^64 (small modulo bias
  /// is acceptable here).
  constexpr std::int64_t integer(std::uint64_t counter, std::int64_t lo, std::int64_t hi) const {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<std::int64_t>(bits(counter) % span);
  }

  /// Independent substream, e.g. for a separate role within one estimator.
  constexpr CounterRng substream(std::uint64_t tag) const { return CounterRng(mix(seed_ ^ mix(tag + 0x5851F42D4C957F2DULL))); }

  constexpr std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

}  // namespace overfit
