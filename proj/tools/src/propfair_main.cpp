// propfair: multiuser multicarrier downlink resource allocation simulator.
//
// Subcommands:
//   simulate           method x trial grid at the config's base power level
//   sweep              method x power x trial grid over the configured sweep
//   oracle-compare     proposed heuristic vs exhaustive optimum at toy sizes
//   delta-sensitivity  power-exchange step size study
//   waterfill-debug    inspect a single water-filling solve

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "propfair/allocator.hpp"
#include "propfair/config.hpp"
#include "propfair/errors.hpp"
#include "propfair/experiments.hpp"
#include "propfair/oracle.hpp"
#include "propfair/waterfill.hpp"

namespace {

namespace fs = std::filesystem;
using propfair::ExperimentConfig;
using propfair::Method;

struct CommonOptions {
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::vector<std::string> methods;
  bool literal_pseudocode = false;
  bool verbose = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool needs_methods = true) {
  cmd->add_option("--config", opts.config_path, "JSON config path")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", opts.out_dir, "output directory (created if absent)");
  cmd->add_option("--seed", opts.seed, "override experiment.base_seed");
  cmd->add_option("--trials", opts.trials, "override experiment.trials");
  if (needs_methods)
    cmd->add_option("--methods", opts.methods,
                    "override experiment.methods (comma separated)")
        ->delimiter(',');
  cmd->add_flag("--literal-pseudocode", opts.literal_pseudocode,
                "flip the power-exchange direction (study mode)");
  cmd->add_flag("-v,--verbose", opts.verbose, "chatty progress output");
}

ExperimentConfig load_with_overrides(const CommonOptions& opts) {
  ExperimentConfig config = propfair::load_config_file(opts.config_path);
  if (opts.seed) config.base_seed = *opts.seed;
  if (opts.trials) config.trials = *opts.trials;
  if (!opts.methods.empty()) {
    config.methods.clear();
    for (const std::string& name : opts.methods)
      config.methods.push_back(propfair::method_from_string(name));
  }
  if (opts.literal_pseudocode)
    config.direction = propfair::TransferDirection::from_underserved;
  config.validate();
  return config;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

fs::path prepare_out_dir(const CommonOptions& opts, const ExperimentConfig& config) {
  const fs::path dir(opts.out_dir);
  fs::create_directories(dir);
  write_file(dir / "config_echo.json", propfair::config_echo_json(config));
  return dir;
}

int run_grid(const CommonOptions& opts, bool full_sweep) {
  ExperimentConfig config = load_with_overrides(opts);
  if (!full_sweep) config.power_sweep = {config.params.total_power_w};
  const fs::path dir = prepare_out_dir(opts, config);

  const propfair::SweepResult result = propfair::sweep(config);
  write_file(dir / "trials.csv",
             propfair::trials_csv(result.records, config.params.num_users));
  write_file(dir / "summary.csv", propfair::summary_csv(result.aggregates));

  std::cout << result.records.size() << " trials -> " << (dir / "trials.csv").string()
            << "\n";
  if (opts.verbose) {
    for (const auto& row : result.aggregates)
      std::cout << "  " << propfair::to_string(row.method) << " @ " << row.p_total
                << " W: mean sum-rate " << row.mean_sum_rate << " bps/Hz, mean delta "
                << row.mean_delta << "\n";
  }
  return 0;
}

int run_oracle_compare(const CommonOptions& opts) {
  ExperimentConfig config = load_with_overrides(opts);
  const fs::path dir = prepare_out_dir(opts, config);

  // Sizing check up front so misconfigured runs fail before any work.
  {
    std::uint64_t count = 1;
    const auto guard = std::uint64_t{1000000};
    for (int n = 0; n < config.params.num_subcarriers; ++n) {
      if (count > guard / static_cast<std::uint64_t>(config.params.num_users))
        throw propfair::SizingError(
            "oracle-compare: K^N exceeds the " + std::to_string(guard) +
            "-assignment guard; use a smaller system");
      count *= static_cast<std::uint64_t>(config.params.num_users);
    }
  }

  std::ostringstream csv;
  csv << "seed,oracle_rate,heuristic_rate,gap\n";
  double worst_gap = 0.0, gap_sum = 0.0;
  for (int trial = 0; trial < config.trials; ++trial) {
    const std::uint64_t trial_seed =
        propfair::derive_stream(config.base_seed, static_cast<std::uint64_t>(trial));
    const propfair::GainGrid grid =
        propfair::snr_grid(config.params, config.profile, trial_seed);

    const propfair::Assignment assignment =
        propfair::allocate_subcarriers(grid, config.weights, config.params);
    const double delta_step = config.delta_fraction * config.params.total_power_w /
                              config.params.num_subcarriers;
    const propfair::ReallocationOutcome outcome = propfair::reallocate_power(
        assignment, grid, config.weights, config.params, delta_step,
        config.max_iterations, config.direction);
    const double heuristic_rate = outcome.report.sum_rate;

    const propfair::OracleResult oracle =
        propfair::exhaustive_best(grid, config.weights, config.params);
    const double gap =
        (oracle.optimum_sum_rate - heuristic_rate) / oracle.optimum_sum_rate;
    worst_gap = std::max(worst_gap, gap);
    gap_sum += gap;

    char buf[160];
    std::snprintf(buf, sizeof(buf), "%llu,%.17g,%.17g,%.17g\n",
                  static_cast<unsigned long long>(trial_seed),
                  oracle.optimum_sum_rate, heuristic_rate, gap);
    csv << buf;
    if (opts.verbose && (trial + 1) % 50 == 0)
      std::cout << "  " << (trial + 1) << "/" << config.trials << " seeds\n";
  }
  write_file(dir / "oracle_compare.csv", csv.str());
  std::cout << config.trials << " seeds -> " << (dir / "oracle_compare.csv").string()
            << " (mean gap " << gap_sum / config.trials << ", max gap " << worst_gap
            << ")\n";
  return 0;
}

int run_delta_sensitivity(const CommonOptions& opts,
                          const std::vector<double>& fractions) {
  ExperimentConfig config = load_with_overrides(opts);
  const fs::path dir = prepare_out_dir(opts, config);

  const std::vector<propfair::DeltaSensitivityRow> rows =
      propfair::delta_sensitivity(config, fractions);
  write_file(dir / "delta_sensitivity.csv", propfair::delta_sensitivity_csv(rows));
  std::cout << rows.size() << " rows -> " << (dir / "delta_sensitivity.csv").string()
            << "\n";
  return 0;
}

int run_waterfill_debug(const std::vector<double>& gains, double budget, int n_total) {
  const propfair::WaterfillResult result = propfair::waterfill(gains, budget);
  nlohmann::json out;
  out["gains"] = gains;
  out["budget_w"] = budget;
  out["water_level"] = result.water_level;
  out["powers"] = result.powers;
  out["active_set"] = result.active_set;
  out["rate_bpshz"] =
      propfair::rate_on_set(gains, result.powers, n_total > 0 ? n_total
                                                              : static_cast<int>(gains.size()));
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proportional-fairness multicarrier resource allocation simulator"};
  app.require_subcommand(1);

  CommonOptions simulate_opts, sweep_opts, oracle_opts, delta_opts;
  std::vector<double> fractions = {0.25, 0.125, 0.0625, 0.03125};
  std::vector<double> wf_gains;
  double wf_budget = 1.0;
  int wf_n_total = 0;

  CLI::App* simulate = app.add_subcommand(
      "simulate", "run the configured methods at the base power level");
  add_common(simulate, simulate_opts);

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "run the configured methods over the power sweep");
  add_common(sweep_cmd, sweep_opts);

  CLI::App* oracle = app.add_subcommand(
      "oracle-compare", "compare the heuristic against the exhaustive optimum");
  add_common(oracle, oracle_opts, /*needs_methods=*/false);

  CLI::App* delta = app.add_subcommand(
      "delta-sensitivity", "sweep the power-exchange step size");
  add_common(delta, delta_opts, /*needs_methods=*/false);
  delta->add_option("--fractions", fractions,
                    "step sizes as fractions of P_total/N (comma separated)")
      ->delimiter(',');

  CLI::App* waterfill = app.add_subcommand(
      "waterfill-debug", "print the water-filling solution for given gains");
  waterfill->add_option("--gains", wf_gains, "subcarrier gains (comma separated)")
      ->delimiter(',')
      ->required();
  waterfill->add_option("--budget", wf_budget, "power budget in watts")->required();
  waterfill->add_option("--n-total", wf_n_total,
                        "rate normalization count (defaults to the gain count)");

  try {
    app.parse(argc, argv);
    if (simulate->parsed()) return run_grid(simulate_opts, /*full_sweep=*/false);
    if (sweep_cmd->parsed()) return run_grid(sweep_opts, /*full_sweep=*/true);
    if (oracle->parsed()) return run_oracle_compare(oracle_opts);
    if (delta->parsed()) return run_delta_sensitivity(delta_opts, fractions);
    if (waterfill->parsed())
      return run_waterfill_debug(wf_gains, wf_budget, wf_n_total);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  } catch (const propfair::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
