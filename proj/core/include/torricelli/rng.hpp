#pragma once

#include <cstdint>

namespace torricelli {

// SplitMix64 (Steele, Lea & Flood 2014). The constants below are the whole
// contract: any port that reproduces this state update reproduces every
// generated configuration bit for bit.
//
//   state += 0x9E3779B97F4A7C15
//   z  = state
//   z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9
//   z ^= z >> 27;  z *= 0x94D049BB133111EB
//   z ^= z >> 31
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  double next_in(double lo, double hi) noexcept {
    return lo + next_double() * (hi - lo);
  }

 private:
  std::uint64_t state_;
};

}  // namespace torricelli
