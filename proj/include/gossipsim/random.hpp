#pragma once

#include <cstdint>

namespace gossipsim {

/// Counter-based deterministic randomness. Every draw is a hash of
/// (seed, key triple), so a stream keyed by (purpose, round, node) can be
/// replayed in any order and never correlates with sibling streams.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Derived source whose draws are independent of this one.
  RandomSource stream(std::uint64_t purpose) const {
    return RandomSource(mix(seed_ + kGolden * (purpose + 1)));
  }

  std::uint64_t bits(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) const {
    std::uint64_t h = seed_;
    h = mix(h + kGolden * (a + 1));
    h = mix(h + kGolden * (b + 1));
    h = mix(h + kGolden * (c + 1));
    return h;
  }

  /// Uniform integer in [0, bound). Rejection sampling keeps it exactly
  /// uniform; bound must be >= 1.
  std::uint64_t uniform(std::uint64_t bound, std::uint64_t a, std::uint64_t b = 0) const {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (std::uint64_t k = 0;; ++k) {
      const std::uint64_t x = bits(a, b, k);
      if (x >= threshold) return x % bound;
    }
  }

  /// Uniform double in [0, 1).
  double unit(std::uint64_t a, std::uint64_t b = 0) const {
    return static_cast<double>(bits(a, b) >> 11) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  // splitmix64 finalizer
  static std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
  }

  std::uint64_t seed_;
};

/// Sequential draws from a RandomSource, used as a node's pre-drawn random
/// tape: all randomness is fixed by the tape seed before execution starts.
class RandomTape {
 public:
  explicit RandomTape(RandomSource src) : src_(src) {}

  std::uint64_t next() { return src_.bits(counter_++); }
  std::uint64_t next_below(std::uint64_t bound) { return src_.uniform(bound, counter_++); }

  /// Seed that regenerates this tape from the start; shipping it ships every
  /// bit the tape will ever produce.
  std::uint64_t seed() const { return src_.seed(); }

 private:
  RandomSource src_;
  std::uint64_t counter_ = 0;
};

}  // namespace gossipsim
