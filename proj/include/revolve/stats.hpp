#pragma once

#include <cstdint>

namespace revolve {

// SplitMix64 (Steele/Lea/Vigna): tiny counter-based 64-bit generator with a
// fixed, platform-independent output sequence. Good enough statistically for
// mesh jitter and chosen so seeds reproduce bit-exactly everywhere.
struct SplitMix64 {
  uint64_t state = 0;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in the open interval (0,1); 53-bit resolution, never 0 or 1
  double uniform01() { return (double(next() >> 11) + 0.5) * 0x1.0p-53; }
};

// Standard normal CDF, absolute error well under 1e-12.
double normal_cdf(double x);

// Inverse of normal_cdf on (0,1), |Phi(x) - u| <= 1e-12 via Halley-polished
// rational initial guess.
double normal_inv_cdf(double u);

}  // namespace revolve
