#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "propfair/errors.hpp"
#include "propfair/rng.hpp"
#include "propfair/waterfill.hpp"
#include "support/oracles.hpp"

using propfair::min_power_for_rate;
using propfair::rate_on_set;
using propfair::SplitMix64;
using propfair::waterfill;
using propfair::WaterfillResult;

namespace {

// Checks the optimality certificate carried by a result: powers sum to the
// budget, active channels sit exactly at the water level, inactive ones are
// below it.
void require_kkt(const std::vector<double>& gains, const WaterfillResult& result,
                 double budget) {
  double total = 0.0;
  for (double w : result.powers) {
    REQUIRE(w >= 0.0);
    total += w;
  }
  REQUIRE(total == doctest::Approx(budget).epsilon(1e-9));
  for (std::size_t j = 0; j < gains.size(); ++j) {
    const double inv = 1.0 / gains[j];
    const bool active = std::find(result.active_set.begin(), result.active_set.end(),
                                  static_cast<int>(j)) != result.active_set.end();
    if (active) {
      REQUIRE(result.powers[j] > 0.0);
      REQUIRE(result.powers[j] ==
              doctest::Approx(result.water_level - inv).epsilon(1e-9));
    } else {
      REQUIRE(result.powers[j] == 0.0);
      REQUIRE(inv >= result.water_level - 1e-12 * std::max(1.0, result.water_level));
    }
  }
}

}  // namespace

TEST_CASE("equal gains split the budget evenly") {
  const std::vector<double> gains{2.0, 2.0, 2.0, 2.0};
  const WaterfillResult result = waterfill(gains, 3.0);
  for (double w : result.powers) CHECK(w == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(result.active_set.size() == 4);
  require_kkt(gains, result, 3.0);
}

TEST_CASE("single channel takes the whole budget") {
  const WaterfillResult result = waterfill(std::vector<double>{0.7}, 2.5);
  CHECK(result.powers[0] == doctest::Approx(2.5));
  CHECK(result.water_level == doctest::Approx(2.5 + 1.0 / 0.7));
}

TEST_CASE("exclusion boundary: weak channel gets exactly zero") {
  // gains (1, 1/2), budget 1: level 2 puts the weak channel right at the
  // threshold, so all power goes to the strong one.
  const std::vector<double> gains{1.0, 0.5};
  const WaterfillResult result = waterfill(gains, 1.0);
  CHECK(result.water_level == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(result.powers[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(result.powers[1] == 0.0);
  CHECK(result.active_set == std::vector<int>{0});

  const std::vector<double> oracle = testsupport::bisection_waterfill(gains, 1.0);
  for (std::size_t j = 0; j < gains.size(); ++j)
    CHECK(result.powers[j] == doctest::Approx(oracle[j]).epsilon(1e-8));
}

TEST_CASE("both channels active once the budget allows") {
  const std::vector<double> gains{1.0, 0.5};
  const WaterfillResult result = waterfill(gains, 2.0);
  CHECK(result.water_level == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(result.powers[0] == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(result.powers[1] == doctest::Approx(0.5).epsilon(1e-12));

  const std::vector<double> oracle = testsupport::bisection_waterfill(gains, 2.0);
  for (std::size_t j = 0; j < gains.size(); ++j)
    CHECK(result.powers[j] == doctest::Approx(oracle[j]).epsilon(1e-8));
}

TEST_CASE("zero budget yields zero powers and an empty active set") {
  const std::vector<double> gains{1.0, 2.0, 3.0};
  const WaterfillResult result = waterfill(gains, 0.0);
  for (double w : result.powers) CHECK(w == 0.0);
  CHECK(result.active_set.empty());
}

TEST_CASE("invalid gains are rejected") {
  CHECK_THROWS_AS(waterfill(std::vector<double>{}, 1.0), propfair::ValidationError);
  CHECK_THROWS_AS(waterfill(std::vector<double>{1.0, 0.0}, 1.0),
                  propfair::ValidationError);
  CHECK_THROWS_AS(waterfill(std::vector<double>{1.0, -2.0}, 1.0),
                  propfair::ValidationError);
  CHECK_THROWS_AS(waterfill(std::vector<double>{1.0}, -1.0),
                  propfair::ValidationError);
}

TEST_CASE("closed form matches the bisection oracle on random cases") {
  SplitMix64 rng(0x5eed0001);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 16);
    const std::vector<double> gains = testsupport::random_gains(n, rng);
    const double budget = 5.0 * propfair::uniform01(rng);
    const WaterfillResult result = waterfill(gains, budget);
    const std::vector<double> oracle = testsupport::bisection_waterfill(gains, budget);
    for (int j = 0; j < n; ++j)
      CHECK(std::abs(result.powers[static_cast<std::size_t>(j)] -
                     oracle[static_cast<std::size_t>(j)]) < 1e-8);
    require_kkt(gains, result, budget);
  }
}

TEST_CASE("water-filling dominates the equal split") {
  SplitMix64 rng(0x5eed0002);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 8);
    const std::vector<double> gains = testsupport::random_gains(n, rng);
    const double budget = 0.1 + 4.0 * propfair::uniform01(rng);
    const WaterfillResult result = waterfill(gains, budget);
    const std::vector<double> equal(static_cast<std::size_t>(n), budget / n);
    CHECK(rate_on_set(gains, result.powers, n) >=
          rate_on_set(gains, equal, n) - 1e-12);
  }
}

TEST_CASE("rate is non-decreasing in the budget") {
  SplitMix64 rng(0x5eed0003);
  const std::vector<double> gains = testsupport::random_gains(6, rng);
  double previous = 0.0;
  for (double budget : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0}) {
    const WaterfillResult result = waterfill(gains, budget);
    const double rate = rate_on_set(gains, result.powers, 6);
    CHECK(rate >= previous - 1e-12);
    previous = rate;
  }
}

TEST_CASE("rate_on_set hand values") {
  CHECK(rate_on_set(std::vector<double>{3.0, 9.0}, std::vector<double>{0.0, 0.0}, 2) ==
        0.0);
  CHECK(rate_on_set(std::vector<double>{1.0}, std::vector<double>{1.0}, 1) ==
        doctest::Approx(1.0));
  // (log2 4 + log2 2) / 2
  CHECK(rate_on_set(std::vector<double>{1.0, 1.0}, std::vector<double>{3.0, 1.0}, 2) ==
        doctest::Approx(1.5));
  CHECK_THROWS_AS(rate_on_set(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}, 2),
                  propfair::ValidationError);
}

TEST_CASE("min_power_for_rate hand values") {
  const auto zero = min_power_for_rate(std::vector<double>{2.0, 3.0}, 0.0, 2);
  CHECK(zero.total == 0.0);

  // invert log2(1+p) = 1
  const auto one = min_power_for_rate(std::vector<double>{1.0}, 1.0, 1);
  CHECK(one.total == doctest::Approx(1.0).epsilon(1e-9));

  const std::vector<double> gains{1.0, 0.5};
  const auto result = min_power_for_rate(gains, 1.0, 2);
  CHECK(rate_on_set(gains, result.powers, 2) == doctest::Approx(1.0).epsilon(1e-9));
  // Round trip: water-filling the returned budget reproduces the target rate.
  const WaterfillResult wf = waterfill(gains, result.total);
  CHECK(rate_on_set(gains, wf.powers, 2) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("min power round-trips the water-filled rate") {
  SplitMix64 rng(0x5eed0004);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const std::vector<double> gains = testsupport::random_gains(n, rng);
    const double budget = 0.05 + 3.0 * propfair::uniform01(rng);
    const WaterfillResult wf = waterfill(gains, budget);
    const double rate = rate_on_set(gains, wf.powers, n);
    const auto inverse = min_power_for_rate(gains, rate, n);
    CHECK(inverse.total == doctest::Approx(budget).epsilon(1e-8));
  }
}

TEST_CASE("min power is strictly increasing in the target rate") {
  SplitMix64 rng(0x5eed0005);
  const std::vector<double> gains = testsupport::random_gains(5, rng);
  double previous = -1.0;
  for (double target : {0.1, 0.2, 0.5, 1.0, 2.0, 4.0}) {
    const auto result = min_power_for_rate(gains, target, 5);
    CHECK(result.total > previous);
    previous = result.total;
  }
}
