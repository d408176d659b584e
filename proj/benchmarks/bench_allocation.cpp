#include <benchmark/benchmark.h>

#include "propfair/allocator.hpp"
#include "propfair/baselines.hpp"
#include "propfair/channel.hpp"
#include "propfair/oracle.hpp"
#include "propfair/waterfill.hpp"

using namespace propfair;

namespace {

SystemParams params_for(int num_users, int num_subcarriers, double p_total = 3.0) {
  SystemParams params;
  params.num_users = num_users;
  params.num_subcarriers = num_subcarriers;
  params.bandwidth_hz = 1e6;
  params.noise_density_w_per_hz = dbm_per_hz_to_w_per_hz(-170.0);
  params.total_power_w = p_total;
  return params;
}

void BM_SnrGrid(benchmark::State& state) {
  const SystemParams params = params_for(10, 64);
  const PowerDelayProfile profile = PowerDelayProfile::six_tap_exponential();
  std::uint64_t seed = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(snr_grid(params, profile, seed++));
}
BENCHMARK(BM_SnrGrid);

void BM_Waterfill(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SystemParams params = params_for(1, n);
  const GainGrid grid =
      snr_grid(params, PowerDelayProfile::six_tap_exponential(), 7);
  std::vector<double> gains(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) gains[static_cast<std::size_t>(i)] = grid.at(0, i);
  for (auto _ : state)
    benchmark::DoNotOptimize(waterfill(gains, 3.0));
}
BENCHMARK(BM_Waterfill)->Arg(8)->Arg(16)->Arg(64);

void BM_AllocateSubcarriers(benchmark::State& state) {
  const SystemParams params = params_for(10, 64);
  const GainGrid grid =
      snr_grid(params, PowerDelayProfile::six_tap_exponential(), 9);
  const FairnessWeights weights = FairnessWeights::uniform(10);
  for (auto _ : state)
    benchmark::DoNotOptimize(allocate_subcarriers(grid, weights, params));
}
BENCHMARK(BM_AllocateSubcarriers);

void BM_ReallocatePower(benchmark::State& state) {
  const SystemParams params = params_for(10, 64);
  const GainGrid grid =
      snr_grid(params, PowerDelayProfile::six_tap_exponential(), 11);
  const FairnessWeights weights = FairnessWeights::uniform(10);
  const Assignment assignment = allocate_subcarriers(grid, weights, params);
  for (auto _ : state)
    benchmark::DoNotOptimize(reallocate_power(assignment, grid, weights, params,
                                              3.0 / (8.0 * 64.0), 1000));
}
BENCHMARK(BM_ReallocatePower);

void BM_ExhaustiveOracle(benchmark::State& state) {
  SystemParams params = params_for(2, 4, 2.0);
  const GainGrid grid = snr_grid(params, PowerDelayProfile{{0.0, -4.35, -8.69}}, 13);
  const FairnessWeights weights = FairnessWeights::uniform(2);
  for (auto _ : state)
    benchmark::DoNotOptimize(exhaustive_best(grid, weights, params));
}
BENCHMARK(BM_ExhaustiveOracle);

}  // namespace
