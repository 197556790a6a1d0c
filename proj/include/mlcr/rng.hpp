#pragma once

// Seeded randomness with results that do not depend on the standard library
// implementation (std distributions are implementation-defined).

#include <cstdint>
#include <random>
#include <vector>

namespace mlcr {

using Rng = std::mt19937_64;

/// Uniform integer in [0, bound) by rejection sampling. bound must be > 0.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = Rng::max() - (Rng::max() % bound + 1) % bound;
  std::uint64_t x;
  do x = rng();
  while (x > limit);
  return x % bound;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double unit_double(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline bool bernoulli(Rng& rng, double p) { return unit_double(rng) < p; }

template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_below(rng, i)]);
}

/// Independent stream for (seed, stream); used to give every row or match its own generator.
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

}  // namespace mlcr
