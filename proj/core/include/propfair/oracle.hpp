#pragma once

#include <cstdint>

#include "propfair/allocator.hpp"
#include "propfair/channel.hpp"

namespace propfair {

struct AssignmentScore {
  double sum_rate = 0.0;
  std::vector<std::vector<double>> powers;  // aligned with the assignment sets
  std::vector<double> rates;
  // A user with positive weight holds no subcarrier, forcing all rates to 0.
  bool has_empty_user = false;
};

struct OracleResult {
  Assignment best_assignment;
  std::vector<std::vector<double>> best_powers;
  double optimum_sum_rate = 0.0;
  std::vector<double> per_user_rates;
  std::uint64_t assignments_evaluated = 0;
};

// Best sum-rate for a fixed assignment under exact rate proportionality:
// with R_k = phi_k * t, bisect on t for the largest t whose per-user minimum
// powers fit the total budget. Returns sum phi_k * t and the per-user
// inverse-water-filling powers.
AssignmentScore best_rate_for_assignment(const Assignment& assignment,
                                         const GainGrid& grid,
                                         const FairnessWeights& weights,
                                         const SystemParams& params);

// Exact solver at toy scale: enumerates all K^N subcarrier assignments in
// lexicographic order (ties keep the first, i.e. lexicographically smallest,
// maximizer). Refuses with SizingError when K^N exceeds the guard.
OracleResult exhaustive_best(const GainGrid& grid, const FairnessWeights& weights,
                             const SystemParams& params,
                             std::uint64_t guard = 1000000);

}  // namespace propfair
