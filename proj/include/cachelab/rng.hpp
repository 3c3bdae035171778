#pragma once

#include <cstdint>
#include <random>

namespace cachelab {

/// SplitMix64 (Steele, Lea & Flood). Used to derive independent seeds.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Workload RNG: std::mt19937_64 (its output sequence is fixed by the
/// standard) seeded through SplitMix64. Conversions to double and to bounded
/// integers are done here rather than with <random> distributions, whose
/// algorithms differ between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(SplitMix64(seed).next()) {}

  /// Seed for the k-th independent sub-stream of `seed`.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t k) {
    SplitMix64 sm(seed ^ (0xd1b54a32d192ed03ULL * (k + 1)));
    return sm.next();
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound); bound > 0. Rejection keeps it unbiased.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cachelab
