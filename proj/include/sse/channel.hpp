#pragma once

// Forward model of the shotgun sequencing channel with erasures: an n-bit
// input on a cycle, K reads of length L with uniform start positions, and
// i.i.d. symbol erasures with probability delta.
//
// Positions are 0-based throughout.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sse/rng.hpp"

namespace sse {

enum class Symbol : std::uint8_t { zero = 0, one = 1, erased = 2 };

inline constexpr Symbol to_symbol(std::uint8_t bit) { return bit ? Symbol::one : Symbol::zero; }

inline constexpr char to_char(Symbol s) {
  switch (s) {
    case Symbol::zero: return '0';
    case Symbol::one: return '1';
    default: return '_';
  }
}

using Bits = std::vector<std::uint8_t>;

struct ChannelParams {
  std::size_t n = 0;
  double lbar = 0.0;
  double delta = 0.0;
  double c_nominal = 0.0;
  std::size_t L = 0;
  std::size_t K = 0;
  double c_effective = 0.0;

  bool operator==(const ChannelParams&) const = default;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void check_common(std::size_t n, double delta) {
  if (n < 4) throw ConfigError("input length n must be at least 4, got " + std::to_string(n));
  if (!(delta >= 0.0 && delta < 1.0))
    throw ConfigError("erasure probability must lie in [0,1), got " + std::to_string(delta));
}

}  // namespace detail

// L = max(1, round(lbar * log2 n)), K = max(1, round(c * n / L)).
inline ChannelParams derive_params(std::size_t n, double c_nominal, double lbar, double delta) {
  detail::check_common(n, delta);
  if (!(c_nominal > 0.0)) throw ConfigError("coverage depth must be positive");
  if (!(lbar > 0.0)) throw ConfigError("normalized read length must be positive");

  const double nd = static_cast<double>(n);
  const auto L = static_cast<std::size_t>(std::max(1.0, std::round(lbar * std::log2(nd))));
  if (L >= n)
    throw ConfigError("read length L=" + std::to_string(L) + " must be smaller than n=" +
                      std::to_string(n));
  const auto K = static_cast<std::size_t>(
      std::max(1.0, std::round(c_nominal * nd / static_cast<double>(L))));

  ChannelParams p;
  p.n = n;
  p.lbar = lbar;
  p.delta = delta;
  p.c_nominal = c_nominal;
  p.L = L;
  p.K = K;
  p.c_effective = static_cast<double>(K) * static_cast<double>(L) / nd;
  return p;
}

// Parameters with an explicit (L, K), for hand-built fixtures. lbar and the
// coverage depth are back-computed from L and K.
inline ChannelParams explicit_params(std::size_t n, std::size_t L, std::size_t K, double delta) {
  detail::check_common(n, delta);
  if (L == 0 || L >= n) throw ConfigError("read length must satisfy 1 <= L < n");
  ChannelParams p;
  p.n = n;
  p.L = L;
  p.K = K;
  p.delta = delta;
  p.lbar = static_cast<double>(L) / std::log2(static_cast<double>(n));
  p.c_effective = static_cast<double>(K) * static_cast<double>(L) / static_cast<double>(n);
  p.c_nominal = p.c_effective;
  return p;
}

struct Read {
  std::size_t start = 0;
  std::vector<Symbol> symbols;

  bool operator==(const Read&) const = default;
};

struct ReadSet {
  ChannelParams params;
  std::vector<Read> reads;
};

// Noise-free read of length L starting at `start`, wrapping around the end of x.
inline Read extract_read(std::span<const std::uint8_t> x, std::size_t start, std::size_t L) {
  const std::size_t n = x.size();
  if (start >= n) throw std::out_of_range("read start outside [0, n)");
  if (L == 0 || L >= n) throw std::out_of_range("read length must satisfy 1 <= L < n");
  Read r;
  r.start = start;
  r.symbols.reserve(L);
  for (std::size_t j = 0; j < L; ++j) r.symbols.push_back(to_symbol(x[(start + j) % n]));
  return r;
}

inline Bits random_input(std::size_t n, std::uint64_t seed) {
  Engine rng(seed);
  Bits x(n);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 64 == 0) word = rng();
    x[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1U);
  }
  return x;
}

// Erases each symbol of `read` independently with probability delta.
template <typename URBG>
void apply_erasures(Read& read, double delta, URBG& rng) {
  if (delta <= 0.0) return;
  for (auto& s : read.symbols)
    if (unit_interval(rng) < delta) s = Symbol::erased;
}

// K reads with i.i.d. uniform starts, each erased symbol-wise. Deterministic in seed.
template <typename URBG = Engine>
ReadSet sample_read_set(std::span<const std::uint8_t> x, const ChannelParams& params,
                        std::uint64_t seed) {
  if (x.size() != params.n) throw ConfigError("input length does not match channel parameters");
  URBG rng(seed);
  ReadSet rs;
  rs.params = params;
  rs.reads.reserve(params.K);
  for (std::size_t i = 0; i < params.K; ++i) {
    const auto start = static_cast<std::size_t>(uniform_below(rng, params.n));
    Read r = extract_read(x, start, params.L);
    apply_erasures(r, params.delta, rng);
    rs.reads.push_back(std::move(r));
  }
  return rs;
}

// Reads at fixed starts with no erasures.
inline ReadSet read_set_at(std::span<const std::uint8_t> x, const ChannelParams& params,
                           std::span<const std::size_t> starts) {
  ReadSet rs;
  rs.params = params;
  rs.params.K = starts.size();
  rs.params.c_effective = static_cast<double>(starts.size() * params.L) /
                          static_cast<double>(params.n);
  for (std::size_t s : starts) rs.reads.push_back(extract_read(x, s, params.L));
  return rs;
}

}  // namespace sse
