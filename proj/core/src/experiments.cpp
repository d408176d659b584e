#include "propfair/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "propfair/baselines.hpp"
#include "propfair/errors.hpp"

namespace propfair {

std::string to_string(Method method) {
  switch (method) {
    case Method::proposed: return "proposed";
    case Method::algorithm1: return "algorithm1";
    case Method::greedy_max_rate: return "greedy_max_rate";
    case Method::static_block_fdma: return "static_block_fdma";
  }
  return "unknown";
}

Method method_from_string(const std::string& name) {
  if (name == "proposed") return Method::proposed;
  if (name == "algorithm1") return Method::algorithm1;
  if (name == "greedy_max_rate") return Method::greedy_max_rate;
  if (name == "static_block_fdma") return Method::static_block_fdma;
  throw ValidationError("experiment.methods: unknown method \"" + name +
                        "\" (expected proposed, algorithm1, greedy_max_rate or "
                        "static_block_fdma)");
}

void ExperimentConfig::validate() const {
  params.validate();
  profile.validate();
  weights.validate(params.num_users);
  if (power_sweep.empty())
    throw ValidationError("experiment.power_sweep_w: must be non-empty");
  for (std::size_t i = 0; i < power_sweep.size(); ++i) {
    if (!(power_sweep[i] > 0.0) || !std::isfinite(power_sweep[i]))
      throw ValidationError("experiment.power_sweep_w[" + std::to_string(i) +
                            "]: must be > 0");
    if (i > 0 && power_sweep[i] <= power_sweep[i - 1])
      throw ValidationError("experiment.power_sweep_w: must be strictly increasing");
  }
  if (methods.empty())
    throw ValidationError("experiment.methods: must be non-empty");
  if (trials < 1) throw ValidationError("experiment.trials: must be >= 1");
  if (!(delta_fraction > 0.0) || !std::isfinite(delta_fraction))
    throw ValidationError("experiment.delta_fraction: must be > 0");
  if (max_iterations < 0)
    throw ValidationError("experiment.max_iterations: must be >= 0");
}

TrialRecord run_trial(const ExperimentConfig& config, Method method, double p_total,
                      int trial_index) {
  SystemParams params = config.params;
  params.total_power_w = p_total;
  params.validate();

  const std::uint64_t trial_seed =
      derive_stream(config.base_seed, static_cast<std::uint64_t>(trial_index));
  const GainGrid grid = snr_grid(params, config.profile, trial_seed);

  TrialRecord record;
  record.method = method;
  record.p_total = p_total;
  record.trial = trial_index;
  record.seed = trial_seed;

  const auto start = std::chrono::steady_clock::now();
  switch (method) {
    case Method::proposed: {
      const Assignment assignment =
          allocate_subcarriers(grid, config.weights, params);
      const double delta_step =
          config.delta_fraction * p_total / params.num_subcarriers;
      const ReallocationOutcome outcome =
          reallocate_power(assignment, grid, config.weights, params, delta_step,
                           config.max_iterations, config.direction);
      record.rates = outcome.report.rates;
      record.xi = outcome.report.xi;
      record.delta = outcome.report.delta;
      record.iterations = outcome.iterations;
      break;
    }
    case Method::algorithm1: {
      const Assignment assignment =
          allocate_subcarriers(grid, config.weights, params);
      const Allocation allocation = equal_power_allocation(assignment, params);
      const DeviationReport report = proportionality_deviation(
          user_rates(allocation, grid, params), config.weights);
      record.rates = report.rates;
      record.xi = report.xi;
      record.delta = report.delta;
      break;
    }
    case Method::greedy_max_rate: {
      const Allocation allocation = greedy_max_rate(grid, params);
      const DeviationReport report = proportionality_deviation(
          user_rates(allocation, grid, params), config.weights);
      record.rates = report.rates;
      record.xi = report.xi;
      record.delta = report.delta;
      break;
    }
    case Method::static_block_fdma: {
      const Allocation allocation =
          equal_power_allocation(static_block_fdma(params), params);
      const DeviationReport report = proportionality_deviation(
          user_rates(allocation, grid, params), config.weights);
      record.rates = report.rates;
      record.xi = report.xi;
      record.delta = report.delta;
      break;
    }
  }
  record.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  record.sum_rate = 0.0;
  for (double r : record.rates) record.sum_rate += r;
  return record;
}

SweepResult sweep(const ExperimentConfig& config) {
  config.validate();
  SweepResult result;
  result.records.reserve(config.methods.size() * config.power_sweep.size() *
                         static_cast<std::size_t>(config.trials));
  for (Method method : config.methods)
    for (double p_total : config.power_sweep)
      for (int trial = 0; trial < config.trials; ++trial)
        result.records.push_back(run_trial(config, method, p_total, trial));
  result.aggregates = aggregate(result.records);
  return result;
}

namespace {

struct Stats {
  double mean = 0.0;
  double se = 0.0;
};

Stats mean_and_se(const std::vector<double>& values) {
  Stats stats;
  const auto n = static_cast<double>(values.size());
  if (values.empty()) return stats;
  for (double v : values) stats.mean += v;
  stats.mean /= n;
  if (values.size() < 2) return stats;
  double ss = 0.0;
  for (double v : values) ss += (v - stats.mean) * (v - stats.mean);
  stats.se = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  return stats;
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace

std::vector<AggregateRow> aggregate(const std::vector<TrialRecord>& records) {
  std::vector<AggregateRow> rows;
  // Group by (method, p_total) in order of first appearance.
  for (const TrialRecord& record : records) {
    bool found = false;
    for (const AggregateRow& row : rows)
      if (row.method == record.method && row.p_total == record.p_total) {
        found = true;
        break;
      }
    if (found) continue;

    std::vector<double> sum_rates, deltas, iterations;
    for (const TrialRecord& r : records) {
      if (r.method != record.method || r.p_total != record.p_total) continue;
      sum_rates.push_back(r.sum_rate);
      deltas.push_back(r.delta);
      iterations.push_back(static_cast<double>(r.iterations));
    }
    AggregateRow row;
    row.method = record.method;
    row.p_total = record.p_total;
    row.trials = static_cast<int>(sum_rates.size());
    const Stats s1 = mean_and_se(sum_rates);
    const Stats s2 = mean_and_se(deltas);
    const Stats s3 = mean_and_se(iterations);
    row.mean_sum_rate = s1.mean;
    row.se_sum_rate = s1.se;
    row.mean_delta = s2.mean;
    row.se_delta = s2.se;
    row.mean_iterations = s3.mean;
    row.se_iterations = s3.se;
    rows.push_back(row);
  }
  return rows;
}

std::vector<DeltaSensitivityRow> delta_sensitivity(const ExperimentConfig& config,
                                                   std::span<const double> fractions) {
  config.validate();
  if (fractions.empty())
    throw ValidationError("delta_sensitivity: fractions must be non-empty");
  for (double f : fractions)
    if (!(f > 0.0) || !std::isfinite(f))
      throw ValidationError("delta_sensitivity: fractions must be > 0");

  std::vector<DeltaSensitivityRow> rows;
  for (double fraction : fractions) {
    ExperimentConfig variant = config;
    variant.delta_fraction = fraction;
    for (double p_total : config.power_sweep) {
      std::vector<double> deltas, iterations;
      for (int trial = 0; trial < config.trials; ++trial) {
        const TrialRecord record =
            run_trial(variant, Method::proposed, p_total, trial);
        deltas.push_back(record.delta);
        iterations.push_back(static_cast<double>(record.iterations));
      }
      DeltaSensitivityRow row;
      row.fraction = fraction;
      row.p_total = p_total;
      row.trials = config.trials;
      const Stats sd = mean_and_se(deltas);
      const Stats si = mean_and_se(iterations);
      row.mean_delta = sd.mean;
      row.se_delta = sd.se;
      row.mean_iterations = si.mean;
      row.se_iterations = si.se;
      rows.push_back(row);
    }
  }
  return rows;
}

std::string trials_csv(const std::vector<TrialRecord>& records, int num_users) {
  std::ostringstream out;
  out << "method,p_total_w,trial,seed,sum_rate_bpshz,delta,iterations";
  for (int k = 1; k <= num_users; ++k) out << ",R_" << k;
  for (int k = 1; k <= num_users; ++k) out << ",xi_" << k;
  out << ",wall_time_s\n";
  for (const TrialRecord& r : records) {
    out << to_string(r.method) << ',' << format_double(r.p_total) << ',' << r.trial
        << ',' << r.seed << ',' << format_double(r.sum_rate) << ','
        << format_double(r.delta) << ',' << r.iterations;
    for (double rate : r.rates) out << ',' << format_double(rate);
    for (double x : r.xi) out << ',' << format_double(x);
    out << ',' << format_double(r.wall_time_s) << '\n';
  }
  return out.str();
}

std::string summary_csv(const std::vector<AggregateRow>& rows) {
  std::ostringstream out;
  out << "method,p_total_w,trials,mean_sum_rate,se_sum_rate,mean_delta,se_delta,"
         "mean_iterations,se_iterations\n";
  for (const AggregateRow& r : rows) {
    out << to_string(r.method) << ',' << format_double(r.p_total) << ',' << r.trials
        << ',' << format_double(r.mean_sum_rate) << ',' << format_double(r.se_sum_rate)
        << ',' << format_double(r.mean_delta) << ',' << format_double(r.se_delta)
        << ',' << format_double(r.mean_iterations) << ','
        << format_double(r.se_iterations) << '\n';
  }
  return out.str();
}

std::string delta_sensitivity_csv(const std::vector<DeltaSensitivityRow>& rows) {
  std::ostringstream out;
  out << "delta_fraction,p_total_w,trials,mean_delta,se_delta,mean_iterations,"
         "se_iterations\n";
  for (const DeltaSensitivityRow& r : rows) {
    out << format_double(r.fraction) << ',' << format_double(r.p_total) << ','
        << r.trials << ',' << format_double(r.mean_delta) << ','
        << format_double(r.se_delta) << ',' << format_double(r.mean_iterations) << ','
        << format_double(r.se_iterations) << '\n';
  }
  return out.str();
}

std::vector<TrialRecord> parse_trials_csv(const std::string& text) {
  std::vector<TrialRecord> records;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("trials csv: missing header");

  int num_users = 0;
  {
    std::istringstream header(line);
    std::string column;
    while (std::getline(header, column, ','))
      if (column.rfind("R_", 0) == 0) ++num_users;
  }

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    TrialRecord r;
    std::getline(row, field, ',');
    r.method = method_from_string(field);
    std::getline(row, field, ',');
    r.p_total = std::strtod(field.c_str(), nullptr);
    std::getline(row, field, ',');
    r.trial = std::atoi(field.c_str());
    std::getline(row, field, ',');
    r.seed = std::strtoull(field.c_str(), nullptr, 10);
    std::getline(row, field, ',');
    r.sum_rate = std::strtod(field.c_str(), nullptr);
    std::getline(row, field, ',');
    r.delta = std::strtod(field.c_str(), nullptr);
    std::getline(row, field, ',');
    r.iterations = std::atoi(field.c_str());
    for (int k = 0; k < num_users; ++k) {
      std::getline(row, field, ',');
      r.rates.push_back(std::strtod(field.c_str(), nullptr));
    }
    for (int k = 0; k < num_users; ++k) {
      std::getline(row, field, ',');
      r.xi.push_back(std::strtod(field.c_str(), nullptr));
    }
    std::getline(row, field, ',');
    r.wall_time_s = std::strtod(field.c_str(), nullptr);
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace propfair
