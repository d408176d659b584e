#include "propfair/baselines.hpp"

#include "propfair/errors.hpp"

namespace propfair {

Allocation greedy_max_rate(const GainGrid& grid, const SystemParams& params) {
  params.validate();
  grid.validate();
  if (grid.num_users != params.num_users ||
      grid.num_subcarriers != params.num_subcarriers)
    throw ValidationError("greedy_max_rate: grid dimensions do not match params");

  Assignment assignment;
  assignment.sets.assign(static_cast<std::size_t>(params.num_users), {});
  for (int n = 0; n < params.num_subcarriers; ++n) {
    int best = 0;
    for (int k = 1; k < params.num_users; ++k)
      if (grid.at(k, n) > grid.at(best, n)) best = k;
    assignment.sets[static_cast<std::size_t>(best)].push_back(n);
  }
  return equal_power_allocation(assignment, params);
}

Assignment static_block_fdma(const SystemParams& params) {
  params.validate();
  const int num_users = params.num_users;
  const int num_subcarriers = params.num_subcarriers;

  Assignment assignment;
  assignment.sets.assign(static_cast<std::size_t>(num_users), {});
  const int base = num_subcarriers / num_users;
  const int remainder = num_subcarriers % num_users;
  int next = 0;
  for (int k = 0; k < num_users; ++k) {
    const int block = base + (k < remainder ? 1 : 0);
    for (int i = 0; i < block; ++i)
      assignment.sets[static_cast<std::size_t>(k)].push_back(next++);
  }
  return assignment;
}

}  // namespace propfair
