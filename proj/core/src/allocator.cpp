#include "propfair/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "propfair/errors.hpp"
#include "propfair/waterfill.hpp"

namespace propfair {

double FairnessWeights::sum() const {
  return std::accumulate(phi.begin(), phi.end(), 0.0);
}

void FairnessWeights::validate(int num_users) const {
  if (static_cast<int>(phi.size()) != num_users)
    throw ValidationError("weights: expected one entry per user");
  for (std::size_t k = 0; k < phi.size(); ++k) {
    if (!std::isfinite(phi[k]) || phi[k] <= 0.0)
      throw ValidationError("weights[" + std::to_string(k) + "]: must be > 0");
  }
}

FairnessWeights FairnessWeights::uniform(int num_users) {
  return FairnessWeights{std::vector<double>(static_cast<std::size_t>(num_users), 1.0)};
}

std::vector<int> Assignment::cardinalities() const {
  std::vector<int> sizes(sets.size());
  for (std::size_t k = 0; k < sets.size(); ++k)
    sizes[k] = static_cast<int>(sets[k].size());
  return sizes;
}

bool Assignment::is_partition(int num_subcarriers) const {
  std::vector<int> owners(static_cast<std::size_t>(num_subcarriers), 0);
  for (const auto& set : sets) {
    for (int n : set) {
      if (n < 0 || n >= num_subcarriers) return false;
      ++owners[static_cast<std::size_t>(n)];
    }
  }
  return std::all_of(owners.begin(), owners.end(), [](int c) { return c == 1; });
}

double Allocation::total_power() const {
  double total = 0.0;
  for (const auto& user_powers : powers)
    total = std::accumulate(user_powers.begin(), user_powers.end(), total);
  return total;
}

namespace {

// Sum log2(1 + p*h) over a user's set, divided by N.
double set_rate(const std::vector<int>& set, int user, const GainGrid& grid,
                double power_per_sub, int num_subcarriers) {
  double sum = 0.0;
  for (int n : set) sum += std::log2(1.0 + power_per_sub * grid.at(user, n));
  return sum / num_subcarriers;
}

std::vector<double> user_gains(const std::vector<int>& set, int user,
                               const GainGrid& grid) {
  std::vector<double> gains(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) gains[i] = grid.at(user, set[i]);
  return gains;
}

}  // namespace

Assignment allocate_subcarriers(const GainGrid& grid, const FairnessWeights& weights,
                                const SystemParams& params) {
  std::vector<int> identity(static_cast<std::size_t>(params.num_users));
  std::iota(identity.begin(), identity.end(), 0);
  return allocate_subcarriers(grid, weights, params, identity);
}

Assignment allocate_subcarriers(const GainGrid& grid, const FairnessWeights& weights,
                                const SystemParams& params,
                                std::span<const int> user_order) {
  params.validate();
  grid.validate();
  const int num_users = params.num_users;
  const int num_subcarriers = params.num_subcarriers;
  if (grid.num_users != num_users || grid.num_subcarriers != num_subcarriers)
    throw ValidationError("allocate_subcarriers: grid dimensions do not match params");
  weights.validate(num_users);
  if (num_users > num_subcarriers)
    throw ValidationError("allocate_subcarriers: need at least one subcarrier per user");
  {
    std::vector<char> seen(static_cast<std::size_t>(num_users), 0);
    if (static_cast<int>(user_order.size()) != num_users)
      throw ValidationError("allocate_subcarriers: user_order must have one entry per user");
    for (int k : user_order) {
      if (k < 0 || k >= num_users || seen[static_cast<std::size_t>(k)])
        throw ValidationError("allocate_subcarriers: user_order must be a permutation");
      seen[static_cast<std::size_t>(k)] = 1;
    }
  }

  const double p = params.equal_power_per_subcarrier();
  std::vector<char> taken(static_cast<std::size_t>(num_subcarriers), 0);
  Assignment assignment;
  assignment.sets.assign(static_cast<std::size_t>(num_users), {});
  std::vector<double> rates(static_cast<std::size_t>(num_users), 0.0);
  int remaining = num_subcarriers;

  const auto best_free_subcarrier = [&](int user) {
    int best = -1;
    double best_gain = -1.0;
    for (int n = 0; n < num_subcarriers; ++n) {
      if (!taken[static_cast<std::size_t>(n)] && grid.at(user, n) > best_gain) {
        best_gain = grid.at(user, n);
        best = n;
      }
    }
    return best;
  };

  // Each user grabs its single best subcarrier first.
  for (int k : user_order) {
    const int n = best_free_subcarrier(k);
    taken[static_cast<std::size_t>(n)] = 1;
    --remaining;
    assignment.sets[static_cast<std::size_t>(k)].push_back(n);
    rates[static_cast<std::size_t>(k)] =
        set_rate(assignment.sets[static_cast<std::size_t>(k)], k, grid, p, num_subcarriers);
  }

  // Remaining subcarriers go one at a time to the user with the lowest
  // weighted rate.
  while (remaining > 0) {
    int user = 0;
    double lowest = rates[0] / weights.phi[0];
    for (int k = 1; k < num_users; ++k) {
      const double normalized = rates[static_cast<std::size_t>(k)] / weights.phi[static_cast<std::size_t>(k)];
      if (normalized < lowest) {
        lowest = normalized;
        user = k;
      }
    }
    const int n = best_free_subcarrier(user);
    taken[static_cast<std::size_t>(n)] = 1;
    --remaining;
    assignment.sets[static_cast<std::size_t>(user)].push_back(n);
    rates[static_cast<std::size_t>(user)] =
        set_rate(assignment.sets[static_cast<std::size_t>(user)], user, grid, p, num_subcarriers);
  }

  for (auto& set : assignment.sets) std::sort(set.begin(), set.end());
  return assignment;
}

DeviationReport proportionality_deviation(std::span<const double> rates,
                                          const FairnessWeights& weights) {
  const int num_users = static_cast<int>(weights.phi.size());
  weights.validate(num_users);
  if (static_cast<int>(rates.size()) != num_users)
    throw ValidationError("proportionality_deviation: need one rate per user");

  double sum_rate = 0.0;
  for (double r : rates) {
    if (!std::isfinite(r) || r < 0.0)
      throw ValidationError("proportionality_deviation: rates must be finite and >= 0");
    sum_rate += r;
  }
  if (sum_rate <= 0.0)
    throw DegenerateRatesError("proportionality_deviation: all rates are zero");

  DeviationReport report;
  report.rates.assign(rates.begin(), rates.end());
  report.sum_rate = sum_rate;
  report.xi.resize(static_cast<std::size_t>(num_users));
  const double sum_phi = weights.sum();
  double abs_sum = 0.0;
  for (int k = 0; k < num_users; ++k) {
    report.xi[static_cast<std::size_t>(k)] =
        weights.phi[static_cast<std::size_t>(k)] / sum_phi - rates[static_cast<std::size_t>(k)] / sum_rate;
    abs_sum += std::abs(report.xi[static_cast<std::size_t>(k)]);
  }
  report.delta = abs_sum / num_users;
  return report;
}

std::vector<double> user_rates(const Allocation& allocation, const GainGrid& grid,
                               const SystemParams& params) {
  const auto& sets = allocation.assignment.sets;
  if (sets.size() != allocation.powers.size())
    throw ValidationError("user_rates: assignment and powers disagree on user count");
  std::vector<double> rates(sets.size(), 0.0);
  for (std::size_t k = 0; k < sets.size(); ++k) {
    if (sets[k].size() != allocation.powers[k].size())
      throw ValidationError("user_rates: set and power lengths differ");
    double sum = 0.0;
    for (std::size_t i = 0; i < sets[k].size(); ++i)
      sum += std::log2(1.0 + allocation.powers[k][i] *
                                 grid.at(static_cast<int>(k), sets[k][i]));
    rates[k] = sum / params.num_subcarriers;
  }
  return rates;
}

Allocation equal_power_allocation(const Assignment& assignment,
                                  const SystemParams& params) {
  const double p = params.equal_power_per_subcarrier();
  Allocation allocation;
  allocation.assignment = assignment;
  allocation.powers.resize(assignment.sets.size());
  for (std::size_t k = 0; k < assignment.sets.size(); ++k)
    allocation.powers[k].assign(assignment.sets[k].size(), p);
  return allocation;
}

ReallocationOutcome reallocate_power(const Assignment& assignment, const GainGrid& grid,
                                     const FairnessWeights& weights,
                                     const SystemParams& params, double delta_step,
                                     int max_iterations, TransferDirection direction) {
  params.validate();
  const int num_users = params.num_users;
  weights.validate(num_users);
  if (assignment.num_users() != num_users)
    throw ValidationError("reallocate_power: assignment user count does not match params");
  if (!assignment.is_partition(params.num_subcarriers))
    throw ValidationError("reallocate_power: assignment must be a full partition");
  if (!(delta_step > 0.0) || !std::isfinite(delta_step))
    throw ValidationError("reallocate_power: delta_step must be > 0");
  if (max_iterations < 0)
    throw ValidationError("reallocate_power: max_iterations must be >= 0");

  ReallocationOutcome outcome;
  outcome.allocation = equal_power_allocation(assignment, params);
  std::vector<double> rates = user_rates(outcome.allocation, grid, params);
  outcome.report = proportionality_deviation(rates, weights);
  outcome.delta_trace.push_back(outcome.report.delta);

  if (num_users == 1 || outcome.report.delta == 0.0) {
    outcome.stop = StopReason::converged;
    return outcome;
  }

  std::vector<std::vector<double>> gains(static_cast<std::size_t>(num_users));
  std::vector<double> budgets(static_cast<std::size_t>(num_users), 0.0);
  const double p = params.equal_power_per_subcarrier();
  for (int k = 0; k < num_users; ++k) {
    gains[static_cast<std::size_t>(k)] = user_gains(assignment.sets[static_cast<std::size_t>(k)], k, grid);
    budgets[static_cast<std::size_t>(k)] =
        p * static_cast<double>(assignment.sets[static_cast<std::size_t>(k)].size());
  }

  while (true) {
    if (outcome.iterations >= max_iterations) {
      outcome.stop = StopReason::max_iterations;
      break;
    }

    int under = 0, over = 0;  // argmax xi, argmin xi; ties to the lowest index
    for (int k = 1; k < num_users; ++k) {
      if (outcome.report.xi[static_cast<std::size_t>(k)] > outcome.report.xi[static_cast<std::size_t>(under)]) under = k;
      if (outcome.report.xi[static_cast<std::size_t>(k)] < outcome.report.xi[static_cast<std::size_t>(over)]) over = k;
    }
    const int recipient = direction == TransferDirection::to_underserved ? under : over;
    const int donor = direction == TransferDirection::to_underserved ? over : under;

    if (budgets[static_cast<std::size_t>(donor)] < delta_step) {
      outcome.stop = StopReason::donor_exhausted;
      break;
    }

    const double recipient_budget = budgets[static_cast<std::size_t>(recipient)] + delta_step;
    const double donor_budget = budgets[static_cast<std::size_t>(donor)] - delta_step;
    const WaterfillResult wf_recipient =
        waterfill(gains[static_cast<std::size_t>(recipient)], recipient_budget);
    const WaterfillResult wf_donor =
        waterfill(gains[static_cast<std::size_t>(donor)], donor_budget);

    std::vector<double> candidate_rates = rates;
    candidate_rates[static_cast<std::size_t>(recipient)] = rate_on_set(
        gains[static_cast<std::size_t>(recipient)], wf_recipient.powers, params.num_subcarriers);
    candidate_rates[static_cast<std::size_t>(donor)] = rate_on_set(
        gains[static_cast<std::size_t>(donor)], wf_donor.powers, params.num_subcarriers);
    const DeviationReport candidate = proportionality_deviation(candidate_rates, weights);

    if (candidate.delta >= outcome.report.delta) {
      // Exchange does not help; keep the pre-exchange powers and stop.
      outcome.stop = StopReason::no_improvement;
      break;
    }

    budgets[static_cast<std::size_t>(recipient)] = recipient_budget;
    budgets[static_cast<std::size_t>(donor)] = donor_budget;
    outcome.allocation.powers[static_cast<std::size_t>(recipient)] = wf_recipient.powers;
    outcome.allocation.powers[static_cast<std::size_t>(donor)] = wf_donor.powers;
    rates = candidate_rates;
    outcome.report = candidate;
    ++outcome.iterations;
    outcome.delta_trace.push_back(candidate.delta);
  }

  return outcome;
}

}  // namespace propfair
