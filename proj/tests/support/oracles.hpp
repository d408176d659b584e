// Independent reference implementations used to cross-check the library.
// Nothing in here calls the production solvers: the water-filling oracle
// bisects on the water level directly, and instance generators draw from the
// same deterministic RNG the library uses.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "propfair/channel.hpp"
#include "propfair/rng.hpp"

namespace testsupport {

// Bisection on the water level: sum_j (level - 1/h_j)^+ is monotone in the
// level, so bracket and halve until the dispensed power matches the budget.
inline std::vector<double> bisection_waterfill(const std::vector<double>& gains,
                                               double budget) {
  double inv_min = gains.empty() ? 0.0 : 1.0 / gains[0];
  double inv_max = inv_min;
  for (double g : gains) {
    inv_min = std::min(inv_min, 1.0 / g);
    inv_max = std::max(inv_max, 1.0 / g);
  }
  const auto dispensed = [&](double level) {
    double sum = 0.0;
    for (double g : gains) sum += std::max(0.0, level - 1.0 / g);
    return sum;
  };
  double lo = inv_min;
  double hi = inv_max + budget;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (dispensed(mid) < budget)
      lo = mid;
    else
      hi = mid;
  }
  const double level = 0.5 * (lo + hi);
  std::vector<double> powers(gains.size());
  for (std::size_t j = 0; j < gains.size(); ++j)
    powers[j] = std::max(0.0, level - 1.0 / gains[j]);
  return powers;
}

inline std::vector<double> random_gains(int n, propfair::SplitMix64& rng,
                                        double log10_lo = -1.0,
                                        double log10_hi = 2.0) {
  std::vector<double> gains(static_cast<std::size_t>(n));
  for (double& g : gains) {
    const double e = log10_lo + (log10_hi - log10_lo) * propfair::uniform01(rng);
    g = std::pow(10.0, e);
  }
  return gains;
}

inline propfair::GainGrid random_grid(int num_users, int num_subcarriers,
                                      propfair::SplitMix64& rng,
                                      double log10_lo = -1.0, double log10_hi = 2.0) {
  propfair::GainGrid grid{num_users, num_subcarriers,
                          std::vector<double>(static_cast<std::size_t>(num_users) *
                                              num_subcarriers)};
  for (double& v : grid.values) {
    const double e = log10_lo + (log10_hi - log10_lo) * propfair::uniform01(rng);
    v = std::pow(10.0, e);
  }
  return grid;
}

}  // namespace testsupport
