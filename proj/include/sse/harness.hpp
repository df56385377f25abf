#pragma once

// Sweep engine behind the command line tool: parameter grids, a worker pool
// for independent trials, and the CSV tables for bounds curves, simulation
// validation and concentration checks.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "sse/bounds.hpp"
#include "sse/channel.hpp"
#include "sse/islands.hpp"
#include "sse/statistics.hpp"

namespace sse {

inline constexpr int csv_schema_version = 1;

struct SweepConfig {
  std::vector<std::size_t> n_values{100000};
  std::vector<double> c_values{1.0};
  std::vector<double> delta_values{0.2};
  double lbar = 1.75;
  std::size_t trials = 50;
  std::uint64_t master_seed = 1;
  std::size_t l_prime = 2;
  std::size_t j_max = 40;
  std::optional<double> alpha;  // empty: default_alpha(c)
  MergeMode merge_mode = MergeMode::maximal_run;
  std::string output_path;  // empty: standard output
  std::size_t workers = 0;  // 0: hardware concurrency
};

inline std::vector<double> linspace(double lo, double hi, std::size_t steps) {
  if (steps == 0) throw ConfigError("grid needs at least one step");
  if (steps == 1) return {lo};
  std::vector<double> v(steps);
  for (std::size_t i = 0; i < steps; ++i)
    v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  return v;
}

// Achievability vs converse curves: lbar = 1.75, delta in {0, 0.2, 0.3},
// c from 0.05 to 10 in 200 steps.
inline void apply_fig2_preset(SweepConfig& cfg) {
  cfg.lbar = 1.75;
  cfg.delta_values = {0.0, 0.2, 0.3};
  cfg.c_values = linspace(0.05, 10.0, 200);
}

inline double alpha_for(const SweepConfig& cfg, double c) {
  return cfg.alpha ? *cfg.alpha : default_alpha(c);
}

// Checks grids and parameter domains. With `needs_channel`, also derives
// every (n, c) channel to reject read lengths that do not fit.
inline void validate(const SweepConfig& cfg, bool needs_channel) {
  if (cfg.c_values.empty()) throw ConfigError("coverage grid is empty");
  if (cfg.delta_values.empty()) throw ConfigError("erasure grid is empty");
  if (!(cfg.lbar > 0.0)) throw ConfigError("lbar must be positive");
  for (double c : cfg.c_values)
    if (!(c > 0.0)) throw ConfigError("coverage depths must be positive");
  for (double d : cfg.delta_values)
    if (!(d >= 0.0 && d < 1.0)) throw ConfigError("erasure probabilities must lie in [0,1)");
  if (cfg.alpha && !(*cfg.alpha > 0.0)) throw ConfigError("alpha must be positive");
  if (!needs_channel) return;
  if (cfg.n_values.empty()) throw ConfigError("input length grid is empty");
  if (cfg.trials < 1) throw ConfigError("trials must be at least 1");
  if (cfg.l_prime < 1) throw ConfigError("L' must be at least 1");
  if (cfg.j_max < 2) throw ConfigError("J must be at least 2");
  for (std::size_t n : cfg.n_values)
    for (double c : cfg.c_values) (void)derive_params(n, c, cfg.lbar, cfg.delta_values.front());
}

// ---------------------------------------------------------------- CSV

inline std::string format_real(double v) {
  if (v == 0.0) return "0";  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string format_real(const std::optional<double>& v, const char* missing) {
  return v ? format_real(*v) : std::string(missing);
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& os) const {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ',';
        os << quote(cells[i]);
      }
      os << "\r\n";
    };
    line(header);
    for (const auto& r : rows) line(r);
  }

  std::string str() const {
    std::ostringstream os;
    write(os);
    return os.str();
  }

  std::size_t column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw std::out_of_range("no CSV column " + name);
    return static_cast<std::size_t>(it - header.begin());
  }

 private:
  static std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + '"';
  }
};

// Writes to cfg.output_path, or to `fallback` when no path is set.
inline void emit(const CsvTable& table, const SweepConfig& cfg, std::ostream& fallback) {
  if (cfg.output_path.empty()) {
    table.write(fallback);
    return;
  }
  std::ofstream out(cfg.output_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + cfg.output_path);
  table.write(out);
  if (!out.flush()) throw std::runtime_error("write failed for " + cfg.output_path);
}

// ---------------------------------------------------------------- trials

// Runs job(t) for t in [0, count) on a pool of threads. Results are stored
// by index, so the output does not depend on the number of workers.
template <typename Job>
auto run_indexed(std::size_t count, std::size_t workers, Job job)
    -> std::vector<decltype(job(std::size_t{}))> {
  using Result = decltype(job(std::size_t{}));
  std::vector<Result> results(count);
  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t t = 0; t < count; ++t) results[t] = job(t);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t; !failed && (t = next++) < count;) {
          try {
            results[t] = job(t);
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

struct TrialOutcome {
  TrialStats stats;
  PartitionReport partition;
};

// One channel use: reads from the trial's own stream, islands, measurements.
inline TrialOutcome run_trial(std::span<const std::uint8_t> x, const ChannelParams& params,
                              std::uint64_t master_seed, std::size_t trial,
                              const SweepConfig& cfg, double alpha) {
  const ReadSet rs = sample_read_set(x, params, child_seed(master_seed, trial));
  const IslandSet islands = merge_true_islands(rs, cfg.merge_mode);
  TrialOutcome out;
  out.stats = measure_trial(rs, islands);
  out.partition = partition_islands(islands, cfg.l_prime, cfg.j_max, alpha);
  return out;
}

struct SimulationPoint {
  ChannelParams params;
  std::vector<TrialOutcome> outcomes;
  AggregateReport report;
};

inline SimulationPoint simulate_point(const SweepConfig& cfg, std::size_t n, double c,
                                      double delta) {
  SimulationPoint pt;
  pt.params = derive_params(n, c, cfg.lbar, delta);
  const Bits x = random_input(n, input_seed(cfg.master_seed));
  const double alpha = alpha_for(cfg, c);
  pt.outcomes = run_indexed(cfg.trials, cfg.workers, [&](std::size_t t) {
    return run_trial(x, pt.params, cfg.master_seed, t, cfg, alpha);
  });
  std::vector<TrialStats> stats;
  stats.reserve(pt.outcomes.size());
  for (const auto& o : pt.outcomes) stats.push_back(o.stats);
  pt.report = aggregate(stats, pt.params, alpha);
  return pt;
}

struct ConcentrationPoint {
  ChannelParams params;
  std::size_t trials = 0;
  std::size_t degenerate_trials = 0;
  std::map<std::size_t, double> pooled_q;  // bin -> share of all islands
  std::map<std::size_t, double> event_frequency;  // bin -> fraction of trials with E_k
  double alpha = 0.0;
  double d_threshold = 0.0;
  Estimate d_tail;
};

// Pools bin frequencies over the non-degenerate trials, then counts in how
// many trials each bin deviates by more than epsilon n / Lambda from its
// pooled mean.
inline ConcentrationPoint concentration_point(const SweepConfig& cfg, std::size_t n, double c,
                                              double delta) {
  SimulationPoint sim = simulate_point(cfg, n, c, delta);
  ConcentrationPoint cp;
  cp.params = sim.params;
  cp.trials = sim.outcomes.size();
  cp.alpha = sim.report.alpha;
  cp.d_threshold = sim.report.d_threshold;
  cp.d_tail = sim.report.d_tail;

  std::map<std::size_t, std::size_t> pooled;
  std::size_t islands = 0;
  for (const auto& o : sim.outcomes) {
    if (o.partition.degenerate) {
      ++cp.degenerate_trials;
      continue;
    }
    islands += o.partition.k_prime;
    for (const auto& [k, count] : o.partition.bin_counts) pooled[k] += count;
  }
  for (const auto& [k, count] : pooled)
    cp.pooled_q[k] = static_cast<double>(count) / static_cast<double>(islands);

  std::map<std::size_t, std::size_t> hits;
  for (auto& o : sim.outcomes) {
    if (o.partition.degenerate) continue;
    flag_concentration_events(o.partition, cp.pooled_q);
    for (const auto& [k, flagged] : o.partition.e_event_flags)
      if (flagged) ++hits[k];
  }
  const std::size_t used = cp.trials - cp.degenerate_trials;
  for (const auto& [k, q] : cp.pooled_q)
    cp.event_frequency[k] = used ? static_cast<double>(hits[k]) / static_cast<double>(used) : 0.0;
  return cp;
}

// ---------------------------------------------------------------- tables

inline CsvTable run_bounds_sweep(const SweepConfig& cfg) {
  validate(cfg, false);
  CsvTable t;
  t.header = {"schema_version", "c", "delta", "lbar", "delta_e", "achievable",
              "converse_raw", "converse", "converse_clamped", "noise_free_cap", "gap"};
  for (double delta : cfg.delta_values) {
    for (double c : cfg.c_values) {
      const BoundPoint b = bound_point(c, delta, cfg.lbar);
      t.rows.push_back({std::to_string(csv_schema_version), format_real(c), format_real(delta),
                        format_real(cfg.lbar), format_real(b.delta_e),
                        format_real(b.achievable, "NA"), format_real(b.converse_raw),
                        format_real(b.converse), b.converse_clamped ? "1" : "0",
                        format_real(b.noise_free_cap, "NA"), format_real(b.gap, "NA")});
    }
  }
  return t;
}

inline CsvTable run_simulation_sweep(const SweepConfig& cfg) {
  validate(cfg, true);
  CsvTable t;
  t.header = {"schema_version", "n", "c_nominal", "c_effective", "delta", "lbar", "L", "K",
              "trials", "merge_mode", "seed",
              "phi_mean", "phi_se", "phi_target",
              "phi_v_mean", "phi_v_se", "phi_v_target",
              "delta_e_mean", "delta_e_se", "delta_e_target",
              "kprime_scaled_mean", "kprime_scaled_se", "kprime_scaled_target",
              "sum_len_frac_mean", "sum_len_frac_se", "sum_len_frac_target",
              "d_max_mean", "d_max_se", "alpha", "d_threshold", "d_tail_freq", "d_tail_se"};
  for (std::size_t n : cfg.n_values) {
    for (double c : cfg.c_values) {
      for (double delta : cfg.delta_values) {
        const SimulationPoint pt = simulate_point(cfg, n, c, delta);
        const auto& p = pt.params;
        const auto& a = pt.report;
        auto se = [](const Estimate& e) { return format_real(e.se, ""); };
        t.rows.push_back({std::to_string(csv_schema_version), std::to_string(n),
                          format_real(p.c_nominal), format_real(p.c_effective),
                          format_real(delta), format_real(p.lbar), std::to_string(p.L),
                          std::to_string(p.K), std::to_string(a.trials),
                          std::string(to_string(cfg.merge_mode)), std::to_string(cfg.master_seed),
                          format_real(a.phi.mean), se(a.phi), format_real(a.phi_target),
                          format_real(a.phi_v.mean), se(a.phi_v), format_real(a.phi_v_target),
                          format_real(a.delta_e.mean), se(a.delta_e), format_real(a.delta_e_target),
                          format_real(a.k_prime_scaled.mean), se(a.k_prime_scaled),
                          format_real(a.k_prime_scaled_target),
                          format_real(a.sum_lengths_frac.mean), se(a.sum_lengths_frac),
                          format_real(a.sum_lengths_target),
                          format_real(a.d_max.mean), se(a.d_max), format_real(a.alpha),
                          format_real(a.d_threshold), format_real(a.d_tail.mean), se(a.d_tail)});
      }
    }
  }
  return t;
}

// Two row kinds share one table: "bin" rows carry the per-bin event
// frequency, "d_tail" rows the per-n frequency of D > alpha log2 n.
inline CsvTable run_concentration_check(const SweepConfig& cfg) {
  validate(cfg, true);
  CsvTable t;
  t.header = {"schema_version", "row_type", "n", "c_nominal", "delta", "lbar", "trials",
              "degenerate_trials", "l_prime", "j_max", "k", "pooled_q", "pr_event",
              "alpha", "d_threshold", "d_tail_freq", "d_tail_se"};
  for (double c : cfg.c_values) {
    for (double delta : cfg.delta_values) {
      for (std::size_t n : cfg.n_values) {
        const ConcentrationPoint cp = concentration_point(cfg, n, c, delta);
        const std::vector<std::string> lead = {
            std::to_string(csv_schema_version), "", std::to_string(n), format_real(c),
            format_real(delta), format_real(cfg.lbar), std::to_string(cp.trials),
            std::to_string(cp.degenerate_trials), std::to_string(cfg.l_prime),
            std::to_string(cfg.j_max)};
        for (const auto& [k, q] : cp.pooled_q) {
          auto row = lead;
          row[1] = "bin";
          row.insert(row.end(), {std::to_string(k), format_real(q),
                                 format_real(cp.event_frequency.at(k)), "", "", "", ""});
          t.rows.push_back(std::move(row));
        }
        auto row = lead;
        row[1] = "d_tail";
        row.insert(row.end(), {"", "", "", format_real(cp.alpha), format_real(cp.d_threshold),
                               format_real(cp.d_tail.mean), format_real(cp.d_tail.se, "")});
        t.rows.push_back(std::move(row));
      }
    }
  }
  return t;
}

}  // namespace sse
