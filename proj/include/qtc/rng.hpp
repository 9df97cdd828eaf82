#pragma once

#include <cstdint>
#include <random>

namespace qtc {

//! Uniform double in [0, 1) from the top 53 bits of the generator.
//! Bit-stable across platforms, unlike std::uniform_real_distribution.
inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

//! Uniform double in [-1, 1).
inline double uniform_symmetric(std::mt19937_64& rng) {
  return 2.0 * uniform_unit(rng) - 1.0;
}

//! Uniform integer in [0, bound) by rejection; exact and platform-stable.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return v % bound;
}

}  // namespace qtc
