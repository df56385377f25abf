#pragma once

// Per-trial measurements of coverage and island structure, the length
// partition used by the concentration argument, and Monte Carlo aggregation
// against the closed-form targets.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "sse/bounds.hpp"
#include "sse/channel.hpp"
#include "sse/islands.hpp"

namespace sse {

struct CoverageCounts {
  std::size_t n = 0;
  std::size_t covered = 0;
  std::size_t visible = 0;
};

// Counts covered positions with a cyclic difference array and visibly
// covered positions by painting unerased symbols. Independent of islands.
inline CoverageCounts coverage_counts(const ReadSet& rs) {
  const std::size_t n = rs.params.n;
  const std::size_t L = rs.params.L;
  CoverageCounts cc;
  cc.n = n;
  if (rs.reads.empty()) return cc;

  std::vector<long> diff(n + 1, 0);
  std::vector<bool> visible(n, false);
  for (const auto& r : rs.reads) {
    const std::size_t end = r.start + L;
    ++diff[r.start];
    if (end <= n) {
      --diff[end];
    } else {
      --diff[n];
      ++diff[0];
      --diff[end - n];
    }
    for (std::size_t j = 0; j < L; ++j)
      if (r.symbols[j] != Symbol::erased) visible[(r.start + j) % n] = true;
  }
  long depth = 0;
  for (std::size_t p = 0; p < n; ++p) {
    depth += diff[p];
    if (depth > 0) ++cc.covered;
  }
  cc.visible = static_cast<std::size_t>(std::count(visible.begin(), visible.end(), true));
  return cc;
}

inline double coverage(const ReadSet& rs) {
  const auto cc = coverage_counts(rs);
  return static_cast<double>(cc.covered) / static_cast<double>(cc.n);
}

inline double visible_coverage(const ReadSet& rs) {
  const auto cc = coverage_counts(rs);
  return static_cast<double>(cc.visible) / static_cast<double>(cc.n);
}

// Unconditional fraction of positions that are covered but not visibly covered.
inline double empirical_delta_e(const ReadSet& rs) {
  const auto cc = coverage_counts(rs);
  const double n = static_cast<double>(cc.n);
  return static_cast<double>(cc.covered) / n - static_cast<double>(cc.visible) / n;
}

inline std::size_t max_reads_per_island(const IslandSet& set) {
  std::size_t d = 0;
  for (const auto& is : set.islands) d = std::max(d, is.read_count);
  return d;
}

struct TrialStats {
  std::size_t n = 0;
  double phi = 0.0;
  double phi_v = 0.0;
  double delta_e_hat = 0.0;
  std::size_t k_prime = 0;
  std::size_t sum_lengths = 0;
  std::size_t d_max = 0;
  std::map<std::size_t, std::size_t> length_histogram;
};

inline TrialStats measure_trial(const ReadSet& rs, const IslandSet& islands) {
  const auto cc = coverage_counts(rs);
  const double n = static_cast<double>(cc.n);
  TrialStats t;
  t.n = cc.n;
  t.phi = static_cast<double>(cc.covered) / n;
  t.phi_v = static_cast<double>(cc.visible) / n;
  t.delta_e_hat = t.phi - t.phi_v;
  t.k_prime = islands.islands.size();
  t.sum_lengths = islands.covered();
  t.d_max = max_reads_per_island(islands);
  for (const auto& is : islands.islands) ++t.length_histogram[is.length];
  return t;
}

// alpha = 2 * (-1 / log2(1 - e^{-c})), twice the smallest admissible value.
inline double default_alpha(double c) {
  return 2.0 * (-1.0 / std::log2(-std::expm1(-c)));
}

// Bin k of an island of length N satisfies (k-1)/L' log2 n <= N < k/L' log2 n.
// Bins at or above j_max are pooled into j_max.
inline std::size_t partition_bin(std::size_t length, std::size_t n, std::size_t l_prime,
                                 std::size_t j_max) {
  const double scaled =
      static_cast<double>(length) * static_cast<double>(l_prime) / std::log2(static_cast<double>(n));
  const auto k = static_cast<std::size_t>(std::floor(scaled)) + 1;
  return std::min(k, j_max);
}

struct PartitionReport {
  std::size_t n = 0;
  std::size_t l_prime = 0;
  std::size_t j_max = 0;
  std::size_t k_prime = 0;
  bool degenerate = false;  // no islands
  std::map<std::size_t, std::size_t> bin_counts;
  std::map<std::size_t, double> q_hat;
  double lambda_hat = 0.0;
  double epsilon = 0.0;
  std::map<std::size_t, bool> e_event_flags;
  double alpha = 0.0;
};

// Partitions islands by length. Concentration flags are only filled when a
// reference bin distribution is supplied (see flag_concentration_events).
inline PartitionReport partition_islands(const IslandSet& set, std::size_t l_prime,
                                         std::size_t j_max, double alpha = 0.0) {
  if (l_prime < 1) throw ConfigError("L' must be at least 1");
  if (j_max < 2) throw ConfigError("J must be at least 2");
  PartitionReport rep;
  rep.n = set.n;
  rep.l_prime = l_prime;
  rep.j_max = j_max;
  rep.alpha = alpha;
  rep.k_prime = set.islands.size();
  if (rep.k_prime == 0) {
    rep.degenerate = true;
    return rep;
  }
  for (const auto& is : set.islands) ++rep.bin_counts[partition_bin(is.length, set.n, l_prime, j_max)];
  const double kp = static_cast<double>(rep.k_prime);
  for (const auto& [k, count] : rep.bin_counts) rep.q_hat[k] = static_cast<double>(count) / kp;
  rep.lambda_hat = static_cast<double>(set.covered()) / kp;
  const double n = static_cast<double>(set.n);
  rep.epsilon = std::log2(n) * std::sqrt(2.0 * rep.lambda_hat / n);
  return rep;
}

// Marks bin k when | |Y'_k| - n q_ref[k] / Lambda | > epsilon n / Lambda.
// Every bin present in either the report or q_ref is flagged or cleared.
inline void flag_concentration_events(PartitionReport& rep,
                                      const std::map<std::size_t, double>& q_ref) {
  rep.e_event_flags.clear();
  if (rep.degenerate) return;
  const double n = static_cast<double>(rep.n);
  const double scale = n / rep.lambda_hat;
  auto flag = [&](std::size_t k) {
    const auto it = rep.bin_counts.find(k);
    const double count = it == rep.bin_counts.end() ? 0.0 : static_cast<double>(it->second);
    const auto qit = q_ref.find(k);
    const double q = qit == q_ref.end() ? 0.0 : qit->second;
    rep.e_event_flags[k] = std::abs(count - scale * q) > rep.epsilon * scale;
  };
  for (const auto& [k, q] : q_ref) flag(k);
  for (const auto& [k, c] : rep.bin_counts) flag(k);
}

// Mean with the standard error of the mean; se is absent for a single sample.
struct Estimate {
  double mean = 0.0;
  std::optional<double> se;
};

inline Estimate estimate(std::span<const double> xs) {
  Estimate e;
  if (xs.empty()) return e;
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double count = static_cast<double>(xs.size());
  e.mean = sum / count;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - e.mean) * (x - e.mean);
    e.se = std::sqrt(ss / (count - 1.0) / count);
  }
  return e;
}

struct AggregateReport {
  std::size_t trials = 0;
  Estimate phi;
  Estimate phi_v;
  Estimate delta_e;
  Estimate k_prime_scaled;  // (log2 n / n) K'
  Estimate sum_lengths_frac;  // sum N_i / n
  Estimate d_max;
  double alpha = 0.0;
  double d_threshold = 0.0;  // alpha log2 n
  Estimate d_tail;  // frequency of D > alpha log2 n

  double phi_target = 0.0;
  double phi_v_target = 0.0;
  double delta_e_target = 0.0;
  double k_prime_scaled_target = 0.0;
  double sum_lengths_target = 0.0;
};

// Folds in trial order; analytic targets use the effective coverage depth.
inline AggregateReport aggregate(std::span<const TrialStats> trials, const ChannelParams& params,
                                 double alpha) {
  if (trials.empty()) throw std::invalid_argument("aggregate needs at least one trial");
  const double n = static_cast<double>(params.n);
  const double log_n = std::log2(n);

  AggregateReport a;
  a.trials = trials.size();
  a.alpha = alpha;
  a.d_threshold = alpha * log_n;

  std::vector<double> buf(trials.size());
  auto est = [&](auto&& field) {
    std::transform(trials.begin(), trials.end(), buf.begin(), field);
    return estimate(buf);
  };
  a.phi = est([](const TrialStats& t) { return t.phi; });
  a.phi_v = est([](const TrialStats& t) { return t.phi_v; });
  a.delta_e = est([](const TrialStats& t) { return t.delta_e_hat; });
  a.k_prime_scaled = est([&](const TrialStats& t) { return log_n / n * static_cast<double>(t.k_prime); });
  a.sum_lengths_frac = est([&](const TrialStats& t) { return static_cast<double>(t.sum_lengths) / n; });
  a.d_max = est([](const TrialStats& t) { return static_cast<double>(t.d_max); });
  a.d_tail = est([&](const TrialStats& t) {
    return static_cast<double>(t.d_max) > a.d_threshold ? 1.0 : 0.0;
  });

  const double c = params.c_effective;
  a.phi_target = expected_coverage(c);
  a.phi_v_target = expected_visible_coverage(c, params.delta);
  a.delta_e_target = analytic_delta_e(c, params.delta);
  a.k_prime_scaled_target = c / params.lbar * std::exp(-c);
  a.sum_lengths_target = expected_coverage(c);
  return a;
}

}  // namespace sse
