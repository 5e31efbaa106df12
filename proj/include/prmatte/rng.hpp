#pragma once

#include <cstdint>
#include <random>

namespace prmatte {

using Rng = std::mt19937_64;

// splitmix64 finalizer; used to derive independent streams from (seed, tag,
// index) so results do not depend on worker count or resume points.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline Rng stream_rng(uint64_t seed, uint64_t tag, uint64_t index = 0) {
  return Rng(mix64(mix64(seed ^ mix64(tag)) ^ index));
}

inline double uniform_real(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {  // inclusive bounds
  std::uniform_int_distribution<int> d(lo, hi);
  return d(rng);
}

inline bool bernoulli(Rng& rng, double p) {
  return uniform_real(rng, 0.0, 1.0) < p;
}

// Box-Muller without the cached second draw, so call sites stay stateless.
inline double normal_draw(Rng& rng) {
  double u1 = 0.0;
  do {
    u1 = uniform_real(rng, 0.0, 1.0);
  } while (u1 <= 1e-300);
  const double u2 = uniform_real(rng, 0.0, 1.0);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

}  // namespace prmatte
