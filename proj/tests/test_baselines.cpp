#include <vector>

#include <doctest.h>

#include "propfair/baselines.hpp"
#include "propfair/errors.hpp"
#include "propfair/rng.hpp"
#include "support/oracles.hpp"

using propfair::Allocation;
using propfair::Assignment;
using propfair::GainGrid;
using propfair::greedy_max_rate;
using propfair::SplitMix64;
using propfair::static_block_fdma;
using propfair::SystemParams;

namespace {

SystemParams make_params(int k, int n, double p_total = 2.0) {
  SystemParams params;
  params.num_users = k;
  params.num_subcarriers = n;
  params.bandwidth_hz = static_cast<double>(n);
  params.noise_density_w_per_hz = 1.0;
  params.total_power_w = p_total;
  return params;
}

}  // namespace

TEST_CASE("greedy gives each column to the strongest user") {
  const GainGrid grid{2, 2, {3.0, 1.0, 2.0, 4.0}};
  const Allocation allocation = greedy_max_rate(grid, make_params(2, 2));
  CHECK(allocation.assignment.sets[0] == std::vector<int>{0});
  CHECK(allocation.assignment.sets[1] == std::vector<int>{1});
}

TEST_CASE("greedy with a single user assigns everything") {
  SplitMix64 rng(21);
  const GainGrid grid = testsupport::random_grid(1, 6, rng);
  const Allocation allocation = greedy_max_rate(grid, make_params(1, 6));
  CHECK(allocation.assignment.sets[0].size() == 6);
}

TEST_CASE("a dominant user starves the rest") {
  GainGrid grid{3, 4, std::vector<double>(12, 1.0)};
  for (int n = 0; n < 4; ++n) grid.at(0, n) = 50.0;
  const Allocation allocation = greedy_max_rate(grid, make_params(3, 4));
  CHECK(allocation.assignment.sets[0].size() == 4);
  CHECK(allocation.assignment.sets[1].empty());
  CHECK(allocation.assignment.sets[2].empty());
  CHECK(allocation.total_power() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("greedy ties go to the lowest user index") {
  const GainGrid grid{2, 2, {5.0, 5.0, 5.0, 5.0}};
  const Allocation allocation = greedy_max_rate(grid, make_params(2, 2));
  CHECK(allocation.assignment.sets[0] == std::vector<int>{0, 1});
  CHECK(allocation.assignment.sets[1].empty());
}

TEST_CASE("fdma blocks are contiguous and channel-oblivious") {
  const Assignment assignment = static_block_fdma(make_params(2, 4));
  CHECK(assignment.sets[0] == std::vector<int>{0, 1});
  CHECK(assignment.sets[1] == std::vector<int>{2, 3});
}

TEST_CASE("fdma remainder goes to the first users") {
  const Assignment assignment = static_block_fdma(make_params(3, 64));
  CHECK(assignment.sets[0].size() == 22);
  CHECK(assignment.sets[1].size() == 21);
  CHECK(assignment.sets[2].size() == 21);
  CHECK(assignment.is_partition(64));
}

TEST_CASE("fdma rejects more users than subcarriers") {
  CHECK_THROWS_AS(static_block_fdma(make_params(5, 4)), propfair::ValidationError);
}

TEST_CASE("both baselines partition and conserve power") {
  SplitMix64 rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 5);
    const GainGrid grid = testsupport::random_grid(k, 16, rng);
    const SystemParams params = make_params(k, 16, 3.0);
    const Allocation greedy = greedy_max_rate(grid, params);
    CHECK(greedy.assignment.is_partition(16));
    CHECK(greedy.total_power() == doctest::Approx(3.0).epsilon(1e-12));
    const Allocation fdma =
        propfair::equal_power_allocation(static_block_fdma(params), params);
    CHECK(fdma.assignment.is_partition(16));
    CHECK(fdma.total_power() == doctest::Approx(3.0).epsilon(1e-12));
  }
}
