#pragma once

#include <span>
#include <vector>

namespace propfair {

// Water-filling split of a power budget over one user's subcarriers.
// Certificate carried by the result: powers[j] = water_level - 1/gains[j] > 0
// for active j, 1/gains[j] >= water_level for inactive j, and the powers sum
// to the budget.
struct WaterfillResult {
  std::vector<double> powers;    // aligned with the input gains
  double water_level = 0.0;      // lambda
  std::vector<int> active_set;   // indices with positive power, ascending
};

// Rate-maximizing power split under a total budget. Solved in closed form on
// the active set: channels are ordered by 1/h and dropped until every
// remaining power is positive, then lambda = (budget + sum 1/h) / |active|.
WaterfillResult waterfill(std::span<const double> gains, double budget);

// (1/n_total) * sum_j log2(1 + powers[j] * gains[j]), in bps/Hz.
double rate_on_set(std::span<const double> gains, std::span<const double> powers,
                   int n_total);

struct MinPowerResult {
  double total = 0.0;
  std::vector<double> powers;
};

// Minimum total power whose water-filling split reaches target_rate, found by
// bisection on the water level. The returned powers are the water-filling
// shape for the final level, so this is the exact inverse of waterfill().
MinPowerResult min_power_for_rate(std::span<const double> gains,
                                  double target_rate, int n_total);

}  // namespace propfair
