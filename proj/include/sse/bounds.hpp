#pragma once

// Closed-form coverage laws and capacity bounds for the shotgun sequencing
// channel with erasures. c is coverage depth, delta the per-symbol erasure
// probability, lbar the read length normalized by log2 n.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace sse {

namespace detail {

inline void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

}  // namespace detail

inline double expected_coverage(double c) {
  detail::require(c > 0.0, "coverage depth must be positive");
  return -std::expm1(-c);
}

inline double expected_visible_coverage(double c, double delta) {
  detail::require(c > 0.0, "coverage depth must be positive");
  detail::require(delta >= 0.0 && delta <= 1.0, "erasure probability must lie in [0,1]");
  return -std::expm1(-c * (1.0 - delta));
}

// Probability that a position is covered but erased in every covering read.
inline double analytic_delta_e(double c, double delta) {
  detail::require(c > 0.0, "coverage depth must be positive");
  detail::require(delta >= 0.0 && delta < 1.0, "erasure probability must lie in [0,1)");
  return std::exp(-c * (1.0 - delta)) - std::exp(-c);
}

// Rate known to be achievable; empty when lbar (1 - delta) <= 1, where the
// achievability result says nothing.
inline std::optional<double> achievable_rate(double c, double delta, double lbar) {
  detail::require(c > 0.0, "coverage depth must be positive");
  detail::require(delta >= 0.0 && delta < 1.0, "erasure probability must lie in [0,1)");
  detail::require(lbar > 0.0, "normalized read length must be positive");
  const double eff = lbar * (1.0 - delta);
  if (!(eff > 1.0)) return std::nullopt;
  return -std::expm1(-c * (1.0 - delta)) -
         (1.0 - delta) * (std::exp(-c * (1.0 - 1.0 / eff)) - std::exp(-c));
}

// Below this normalized read length the capacity is zero.
inline double short_read_threshold(double c, double delta) {
  return c / (c - analytic_delta_e(c, delta));
}

// Coverage term minus re-ordering cost, before thresholding or clamping.
inline double converse_bound_raw(double c, double delta, double lbar) {
  detail::require(lbar > 0.0, "normalized read length must be positive");
  const double de = analytic_delta_e(c, delta);
  return (1.0 - de) * -std::expm1(-c) - (c / lbar) * std::exp(-c);
}

inline double converse_bound(double c, double delta, double lbar) {
  const double raw = converse_bound_raw(c, delta, lbar);
  if (lbar < short_read_threshold(c, delta)) return 0.0;
  return std::max(0.0, raw);
}

inline double noise_free_capacity(double c, double lbar) {
  detail::require(c > 0.0, "coverage depth must be positive");
  detail::require(lbar > 1.0, "noise-free capacity needs lbar > 1");
  return -std::expm1(-c * (1.0 - 1.0 / lbar));
}

struct BoundPoint {
  double c = 0.0;
  double delta = 0.0;
  double lbar = 0.0;
  double delta_e = 0.0;
  double exp_coverage = 0.0;
  double exp_visible_coverage = 0.0;
  std::optional<double> achievable;
  double converse_raw = 0.0;
  double converse = 0.0;
  bool converse_clamped = false;  // converse differs from converse_raw
  std::optional<double> noise_free_cap;
  std::optional<double> gap;
};

inline BoundPoint bound_point(double c, double delta, double lbar) {
  BoundPoint b;
  b.c = c;
  b.delta = delta;
  b.lbar = lbar;
  b.delta_e = analytic_delta_e(c, delta);
  b.exp_coverage = expected_coverage(c);
  b.exp_visible_coverage = expected_visible_coverage(c, delta);
  b.achievable = achievable_rate(c, delta, lbar);
  b.converse_raw = converse_bound_raw(c, delta, lbar);
  b.converse = converse_bound(c, delta, lbar);
  b.converse_clamped = b.converse != b.converse_raw;
  if (lbar > 1.0) b.noise_free_cap = noise_free_capacity(c, lbar);
  if (b.achievable) b.gap = b.converse - *b.achievable;
  return b;
}

}  // namespace sse
