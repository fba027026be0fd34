#ifndef BDS_RNG_HPP
#define BDS_RNG_HPP

#include <cassert>
#include <cstdint>
#include <random>
#include <span>

namespace bds {

using Rng = std::mt19937_64;

// Uniform draw from [0, n). The mt19937_64 stream is standardized, so results
// are reproducible across platforms; plain modulo keeps it that way
// (std::uniform_int_distribution is implementation-defined).
inline uint64_t rand_below(Rng& rng, uint64_t n) {
  assert(n > 0);
  return rng() % n;
}

// Uniform draw from [lo, hi] inclusive.
inline int rand_range(Rng& rng, int lo, int hi) {
  assert(lo <= hi);
  return lo + static_cast<int>(rand_below(rng, static_cast<uint64_t>(hi - lo + 1)));
}

// Index drawn proportionally to nonnegative weights; -1 if all weights are 0.
inline int pick_weighted(Rng& rng, std::span<const double> weights) {
  double total = 0;
  for (double w : weights) total += w;
  if (total <= 0) return -1;
  double x = static_cast<double>(rng() >> 11) / 9007199254740992.0 * total; // 53-bit mantissa
  double acc = 0;
  for (size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (x < acc) return static_cast<int>(i);
  }
  return static_cast<int>(weights.size()) - 1;
}

} // namespace bds

#endif
