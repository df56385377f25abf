// Command line front end: `bounds`, `simulate` and `concentration` write CSV
// to --out or standard output. Options may also come from a TOML/INI file
// given with --config; command line flags take precedence over the file.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sse/harness.hpp"

namespace {

struct CliOptions {
  std::vector<std::size_t> n_values;
  std::vector<double> c_values;
  double c_min = 0.0;
  double c_max = 0.0;
  std::size_t c_steps = 0;
  std::vector<double> delta_values;
  double lbar = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t l_prime = 0;
  std::size_t j_max = 0;
  std::string alpha = "auto";
  std::string merge_mode = "maximal-run";
  std::string out;
  std::string preset;
  std::size_t workers = 0;
};

sse::SweepConfig to_config(const CLI::App& app, const CliOptions& o) {
  sse::SweepConfig cfg;
  auto given = [&](const char* name) { return app.count(name) > 0; };

  if (!o.preset.empty()) {
    if (o.preset != "fig2") throw sse::ConfigError("unknown preset '" + o.preset + "'");
    sse::apply_fig2_preset(cfg);
  }
  if (given("--n")) cfg.n_values = o.n_values;
  if (given("--c-min") || given("--c-max") || given("--c-steps")) {
    if (!(given("--c-min") && given("--c-max") && given("--c-steps")))
      throw sse::ConfigError("--c-min, --c-max and --c-steps must be given together");
    if (o.c_max < o.c_min) throw sse::ConfigError("--c-max is below --c-min");
    cfg.c_values = sse::linspace(o.c_min, o.c_max, o.c_steps);
  }
  if (given("--c")) cfg.c_values = o.c_values;
  if (given("--delta")) cfg.delta_values = o.delta_values;
  if (given("--lbar")) cfg.lbar = o.lbar;
  if (given("--trials")) cfg.trials = o.trials;
  if (given("--seed")) cfg.master_seed = o.seed;
  if (given("--lprime")) cfg.l_prime = o.l_prime;
  if (given("--jmax")) cfg.j_max = o.j_max;
  if (o.alpha != "auto") {
    try {
      std::size_t used = 0;
      cfg.alpha = std::stod(o.alpha, &used);
      if (used != o.alpha.size()) throw std::invalid_argument(o.alpha);
    } catch (const std::exception&) {
      throw sse::ConfigError("--alpha must be a positive number or 'auto'");
    }
  }
  cfg.merge_mode = sse::parse_merge_mode(o.merge_mode);
  cfg.output_path = o.out;
  cfg.workers = o.workers;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shotgun sequencing channel with erasures: bounds and Monte Carlo statistics"};
  app.set_config("--config", "", "TOML/INI file with option values (flags override it)");
  app.fallthrough();
  app.require_subcommand(1);

  CliOptions o;
  app.add_option("--n", o.n_values, "Input lengths n (bits)")->delimiter(',');
  app.add_option("--c", o.c_values, "Explicit coverage depths")->delimiter(',');
  app.add_option("--c-min", o.c_min, "Smallest coverage depth of an evenly spaced grid");
  app.add_option("--c-max", o.c_max, "Largest coverage depth of the grid");
  app.add_option("--c-steps", o.c_steps, "Number of grid points")->check(CLI::PositiveNumber);
  app.add_option("--delta", o.delta_values, "Erasure probabilities")->delimiter(',');
  app.add_option("--lbar", o.lbar, "Read length normalized by log2 n");
  app.add_option("--trials", o.trials, "Monte Carlo trials per grid point");
  app.add_option("--seed", o.seed, "Master seed");
  app.add_option("--lprime", o.l_prime, "Bins per log2 n of island length (L')");
  app.add_option("--jmax", o.j_max, "First pooled length bin (J)");
  app.add_option("--alpha", o.alpha, "Threshold factor for D, or 'auto'");
  app.add_option("--merge-mode", o.merge_mode, "maximal-run or strict-overlap")
      ->check(CLI::IsMember({"maximal-run", "strict-overlap"}));
  app.add_option("--out", o.out, "Output CSV path (default: standard output)");
  app.add_option("--preset", o.preset, "Parameter preset (fig2)");
  app.add_option("--workers", o.workers, "Worker threads (0: all cores)");

  auto* bounds = app.add_subcommand("bounds", "Achievability and converse curves over (c, delta)");
  auto* simulate = app.add_subcommand("simulate", "Empirical vs analytic coverage and island statistics");
  auto* concentration =
      app.add_subcommand("concentration", "Island-length concentration and max-reads-per-island tail");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const sse::SweepConfig cfg = to_config(app, o);
    sse::CsvTable table;
    if (bounds->parsed()) table = sse::run_bounds_sweep(cfg);
    else if (simulate->parsed()) table = sse::run_simulation_sweep(cfg);
    else if (concentration->parsed()) table = sse::run_concentration_check(cfg);
    sse::emit(table, cfg, std::cout);
  } catch (const sse::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return EXIT_SUCCESS;
}
