#pragma once

#include <cstdint>

namespace fm {

// xoshiro256** seeded through splitmix64. Pure 64-bit integer arithmetic, so
// streams are identical on every platform; all structural decisions in the
// generators draw from this, never from floating point.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& w : s_) {
      // splitmix64 step
      x += 0x9E3779B97f4A7C15ull;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
      w = z ^ (z >> 31);
    }
  }

  std::uint64_t next_u64() {
    std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] ^= rotl(s_[3], 45);
    return result;
  }

  // Unbiased draw in [0, n) by rejection.
  std::uint64_t next_below(std::uint64_t n) {
    std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  // Bernoulli with probability p given as a 64-bit fixed-point threshold.
  bool bernoulli_fixed(std::uint64_t threshold) { return next_u64() < threshold; }

  // double in [0,1) with 53 random bits (analysis-side sampling only).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s_[4];
};

// Fixed-point threshold for bernoulli_fixed: round(p * 2^64), computed so the
// same double p always maps to the same threshold.
inline std::uint64_t bernoulli_threshold(double p) {
  if (p <= 0.0) return 0;
  if (p >= 1.0) return ~std::uint64_t{0};
  long double t = static_cast<long double>(p) * 18446744073709551616.0L;
  return static_cast<std::uint64_t>(t);
}

}  // namespace fm
