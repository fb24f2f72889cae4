#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace oco {

using rng_engine = std::mt19937_64;

// Child seed k of a master seed. SplitMix64 output function applied to
// master + (k+1) * golden, which is the (k+1)-th state of the SplitMix64
// stream started at master, so children can be derived in O(1).
// Documented contract: run k of a multi-seed experiment uses
// derive_seed(master, k).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t k) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (k + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline rng_engine make_rng(std::uint64_t seed) { return rng_engine(seed); }

// Uniform in [0,1), top 53 bits of one engine draw. The std distributions are
// not bit-stable across standard libraries, so every sampler here works on
// raw engine output.
inline double uniform01(rng_engine& rng) { return (rng() >> 11) * 0x1.0p-53; }

inline double uniform(rng_engine& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

inline int rademacher(rng_engine& rng) { return (rng() >> 63) ? 1 : -1; }

inline bool bernoulli(rng_engine& rng, double p) { return uniform01(rng) < p; }

// Box-Muller, one value per call (no cached pair, keeps replay trivial).
inline double normal(rng_engine& rng, double mu = 0.0, double sigma = 1.0) {
  double u1 = 1.0 - uniform01(rng);  // (0,1], keeps log finite
  double u2 = uniform01(rng);
  double r = std::sqrt(-2.0 * std::log(u1));
  return mu + sigma * r * std::cos(6.283185307179586 * u2);
}

// Unbiased integer in [0, n) by rejection.
inline std::size_t uniform_index(rng_engine& rng, std::size_t n) {
  const std::uint64_t limit = ~0ull - ~0ull % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::size_t>(x % n);
}

}  // namespace oco
