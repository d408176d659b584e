#include "propfair/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "propfair/errors.hpp"
#include "propfair/waterfill.hpp"

namespace propfair {

AssignmentScore best_rate_for_assignment(const Assignment& assignment,
                                         const GainGrid& grid,
                                         const FairnessWeights& weights,
                                         const SystemParams& params) {
  params.validate();
  const int num_users = params.num_users;
  weights.validate(num_users);
  if (assignment.num_users() != num_users)
    throw ValidationError("best_rate_for_assignment: assignment user count mismatch");

  AssignmentScore score;
  score.powers.resize(static_cast<std::size_t>(num_users));
  score.rates.assign(static_cast<std::size_t>(num_users), 0.0);
  for (int k = 0; k < num_users; ++k) {
    score.powers[static_cast<std::size_t>(k)].assign(
        assignment.sets[static_cast<std::size_t>(k)].size(), 0.0);
    if (assignment.sets[static_cast<std::size_t>(k)].empty()) score.has_empty_user = true;
  }
  // Equal proportions with an empty set force every rate to zero.
  if (score.has_empty_user) return score;

  std::vector<std::vector<double>> gains(static_cast<std::size_t>(num_users));
  double max_gain = 0.0;
  for (int k = 0; k < num_users; ++k) {
    const auto& set = assignment.sets[static_cast<std::size_t>(k)];
    gains[static_cast<std::size_t>(k)].resize(set.size());
    for (std::size_t i = 0; i < set.size(); ++i) {
      gains[static_cast<std::size_t>(k)][i] = grid.at(k, set[i]);
      max_gain = std::max(max_gain, gains[static_cast<std::size_t>(k)][i]);
    }
  }

  const double p_total = params.total_power_w;
  const auto power_needed = [&](double t) {
    double total = 0.0;
    for (int k = 0; k < num_users; ++k) {
      total += min_power_for_rate(gains[static_cast<std::size_t>(k)],
                                  weights.phi[static_cast<std::size_t>(k)] * t,
                                  params.num_subcarriers)
                   .total;
      if (total > p_total) break;
    }
    return total;
  };

  double lo = 0.0;
  double hi = params.num_subcarriers * std::log2(1.0 + p_total * max_gain);
  for (int i = 0; i < 64 && power_needed(hi) <= p_total; ++i) hi *= 2.0;

  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (power_needed(mid) <= p_total)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-12 * hi) break;
  }

  const double t = lo;
  score.sum_rate = 0.0;
  for (int k = 0; k < num_users; ++k) {
    const MinPowerResult mp =
        min_power_for_rate(gains[static_cast<std::size_t>(k)],
                           weights.phi[static_cast<std::size_t>(k)] * t,
                           params.num_subcarriers);
    score.powers[static_cast<std::size_t>(k)] = mp.powers;
    score.rates[static_cast<std::size_t>(k)] =
        rate_on_set(gains[static_cast<std::size_t>(k)], mp.powers, params.num_subcarriers);
    score.sum_rate += score.rates[static_cast<std::size_t>(k)];
  }
  return score;
}

OracleResult exhaustive_best(const GainGrid& grid, const FairnessWeights& weights,
                             const SystemParams& params, std::uint64_t guard) {
  params.validate();
  const int num_users = params.num_users;
  const int num_subcarriers = params.num_subcarriers;
  weights.validate(num_users);
  if (grid.num_users != num_users || grid.num_subcarriers != num_subcarriers)
    throw ValidationError("exhaustive_best: grid dimensions do not match params");

  std::uint64_t total = 1;
  for (int n = 0; n < num_subcarriers; ++n) {
    if (total > guard / static_cast<std::uint64_t>(num_users)) {
      throw SizingError("exhaustive_best: K^N = " + std::to_string(num_users) + "^" +
                        std::to_string(num_subcarriers) + " exceeds the guard of " +
                        std::to_string(guard) + " assignments");
    }
    total *= static_cast<std::uint64_t>(num_users);
  }
  if (total > guard)
    throw SizingError("exhaustive_best: assignment count exceeds the guard");

  OracleResult best;
  best.optimum_sum_rate = -1.0;

  // Mixed-radix counter over subcarrier owners; incrementing the last digit
  // first walks the owner vectors in lexicographic order.
  std::vector<int> owner(static_cast<std::size_t>(num_subcarriers), 0);
  Assignment assignment;
  while (true) {
    assignment.sets.assign(static_cast<std::size_t>(num_users), {});
    for (int n = 0; n < num_subcarriers; ++n)
      assignment.sets[static_cast<std::size_t>(owner[static_cast<std::size_t>(n)])].push_back(n);

    const AssignmentScore score =
        best_rate_for_assignment(assignment, grid, weights, params);
    ++best.assignments_evaluated;
    if (score.sum_rate > best.optimum_sum_rate) {
      best.optimum_sum_rate = score.sum_rate;
      best.best_assignment = assignment;
      best.best_powers = score.powers;
      best.per_user_rates = score.rates;
    }

    int digit = num_subcarriers - 1;
    while (digit >= 0 && owner[static_cast<std::size_t>(digit)] == num_users - 1)
      owner[static_cast<std::size_t>(digit--)] = 0;
    if (digit < 0) break;
    ++owner[static_cast<std::size_t>(digit)];
  }
  return best;
}

}  // namespace propfair
