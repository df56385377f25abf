#pragma once

#include <cstdint>
#include <random>

namespace sse {

using Engine = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seed of the independent stream used by trial `index`. Depends only on
// (master, index), so a trial's randomness is the same whichever worker runs it.
inline std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

// Stream reserved for the channel input string.
inline std::uint64_t input_seed(std::uint64_t master) {
  return child_seed(master, ~std::uint64_t{0});
}

// Uniform integer in [0, bound). Lemire's multiply-shift with rejection; used
// instead of std::uniform_int_distribution so output does not depend on the
// standard library implementation.
template <typename URBG>
std::uint64_t uniform_below(URBG& rng, std::uint64_t bound) {
  static_assert(URBG::max() == ~std::uint64_t{0} && URBG::min() == 0,
                "uniform_below needs a full 64-bit generator");
  unsigned __int128 m = static_cast<unsigned __int128>(rng()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(rng()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

// Uniform double in [0, 1) with 53 random bits.
template <typename URBG>
double unit_interval(URBG& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace sse
