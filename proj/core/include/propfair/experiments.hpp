#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "propfair/allocator.hpp"
#include "propfair/channel.hpp"

namespace propfair {

enum class Method {
  proposed,           // subcarrier allocation + iterative power exchange
  algorithm1,         // subcarrier allocation only, equal power
  greedy_max_rate,    // best-gain assignment, equal power
  static_block_fdma,  // contiguous blocks, equal power
};

std::string to_string(Method method);
Method method_from_string(const std::string& name);  // throws ValidationError

struct ExperimentConfig {
  SystemParams params;
  PowerDelayProfile profile;
  FairnessWeights weights;
  std::vector<double> power_sweep;  // strictly increasing, watts
  std::vector<Method> methods;
  int trials = 1;
  std::uint64_t base_seed = 1;
  double delta_fraction = 0.125;  // delta_step = fraction * P_total / N
  int max_iterations = 1000;
  TransferDirection direction = TransferDirection::to_underserved;

  void validate() const;
};

// One (method, power, channel realization) outcome. wall_time_s is the only
// field excluded from the determinism contract.
struct TrialRecord {
  Method method = Method::proposed;
  double p_total = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;  // derived channel key: derive_stream(base_seed, trial)
  std::vector<double> rates;
  double sum_rate = 0.0;
  double delta = 0.0;
  std::vector<double> xi;
  int iterations = 0;
  double wall_time_s = 0.0;
};

struct AggregateRow {
  Method method = Method::proposed;
  double p_total = 0.0;
  int trials = 0;
  double mean_sum_rate = 0.0, se_sum_rate = 0.0;
  double mean_delta = 0.0, se_delta = 0.0;
  double mean_iterations = 0.0, se_iterations = 0.0;
};

struct SweepResult {
  std::vector<TrialRecord> records;
  std::vector<AggregateRow> aggregates;
};

struct DeltaSensitivityRow {
  double fraction = 0.0;
  double p_total = 0.0;
  int trials = 0;
  double mean_delta = 0.0, se_delta = 0.0;
  double mean_iterations = 0.0, se_iterations = 0.0;
};

// The channel realization depends only on (base_seed, trial_index), so records
// for the same trial are paired across methods and power levels.
TrialRecord run_trial(const ExperimentConfig& config, Method method, double p_total,
                      int trial_index);

// Full method x power x trial grid, plus per-(method, power) aggregates.
SweepResult sweep(const ExperimentConfig& config);

// Mean and standard error of sum_rate, delta and iterations per
// (method, power), recomputable from the persisted records alone.
std::vector<AggregateRow> aggregate(const std::vector<TrialRecord>& records);

// Re-runs the proposed method with each delta fraction over the config's
// power levels and trials.
std::vector<DeltaSensitivityRow> delta_sensitivity(const ExperimentConfig& config,
                                                   std::span<const double> fractions);

// CSV serialization. Floats use 17 significant digits; columns are documented
// in the README. wall_time_s is always the last trials.csv column.
std::string trials_csv(const std::vector<TrialRecord>& records, int num_users);
std::string summary_csv(const std::vector<AggregateRow>& rows);
std::string delta_sensitivity_csv(const std::vector<DeltaSensitivityRow>& rows);
std::vector<TrialRecord> parse_trials_csv(const std::string& text);

}  // namespace propfair
