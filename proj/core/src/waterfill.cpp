#include "propfair/waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "propfair/errors.hpp"

namespace propfair {

namespace {

void check_gains(std::span<const double> gains) {
  if (gains.empty()) throw ValidationError("waterfill: gains must be non-empty");
  for (double g : gains) {
    if (!std::isfinite(g) || g <= 0.0)
      throw ValidationError("waterfill: gains must be positive and finite");
  }
}

}  // namespace

WaterfillResult waterfill(std::span<const double> gains, double budget) {
  check_gains(gains);
  if (!std::isfinite(budget) || budget < 0.0)
    throw ValidationError("waterfill: budget must be finite and >= 0");

  const int n = static_cast<int>(gains.size());
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double ia = 1.0 / gains[static_cast<std::size_t>(a)];
    const double ib = 1.0 / gains[static_cast<std::size_t>(b)];
    return ia != ib ? ia < ib : a < b;
  });

  // Largest prefix of the 1/h-sorted channels whose common level exceeds the
  // worst included channel's 1/h; everything outside gets zero power.
  std::vector<double> prefix_inv(static_cast<std::size_t>(n) + 1, 0.0);
  for (int j = 0; j < n; ++j)
    prefix_inv[static_cast<std::size_t>(j) + 1] =
        prefix_inv[static_cast<std::size_t>(j)] + 1.0 / gains[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];

  int active = 0;
  double level = 1.0 / gains[static_cast<std::size_t>(order[0])];
  for (int k = n; k >= 1; --k) {
    const double lambda = (budget + prefix_inv[static_cast<std::size_t>(k)]) / k;
    if (lambda > 1.0 / gains[static_cast<std::size_t>(order[static_cast<std::size_t>(k - 1)])]) {
      active = k;
      level = lambda;
      break;
    }
  }

  WaterfillResult result;
  result.powers.assign(static_cast<std::size_t>(n), 0.0);
  result.water_level = level;
  result.active_set.reserve(static_cast<std::size_t>(active));
  for (int j = 0; j < active; ++j) {
    const int idx = order[static_cast<std::size_t>(j)];
    result.powers[static_cast<std::size_t>(idx)] = level - 1.0 / gains[static_cast<std::size_t>(idx)];
    result.active_set.push_back(idx);
  }
  std::sort(result.active_set.begin(), result.active_set.end());
  return result;
}

double rate_on_set(std::span<const double> gains, std::span<const double> powers,
                   int n_total) {
  if (gains.size() != powers.size())
    throw ValidationError("rate_on_set: gains and powers must have equal length");
  if (n_total < 1) throw ValidationError("rate_on_set: n_total must be >= 1");
  double sum = 0.0;
  for (std::size_t j = 0; j < gains.size(); ++j) {
    if (powers[j] < 0.0)
      throw ValidationError("rate_on_set: powers must be >= 0");
    sum += std::log2(1.0 + powers[j] * gains[j]);
  }
  return sum / n_total;
}

MinPowerResult min_power_for_rate(std::span<const double> gains, double target_rate,
                                  int n_total) {
  check_gains(gains);
  if (n_total < 1) throw ValidationError("min_power_for_rate: n_total must be >= 1");
  if (!std::isfinite(target_rate) || target_rate < 0.0)
    throw ValidationError("min_power_for_rate: target_rate must be finite and >= 0");

  MinPowerResult result;
  result.powers.assign(gains.size(), 0.0);
  if (target_rate == 0.0) return result;

  const auto rate_at = [&](double level) {
    double sum = 0.0;
    for (double g : gains) {
      const double w = level - 1.0 / g;
      if (w > 0.0) sum += std::log2(1.0 + w * g);
    }
    return sum / n_total;
  };

  double inv_min = std::numeric_limits<double>::infinity();
  double h_min = std::numeric_limits<double>::infinity();
  for (double g : gains) {
    inv_min = std::min(inv_min, 1.0 / g);
    h_min = std::min(h_min, g);
  }

  double lo = inv_min;
  // The exponent is clamped and the bracket doubled as needed so extreme
  // targets stay inside double range; rate_at is monotone in the level.
  const double cap = std::numeric_limits<double>::max() / 8.0;
  double hi = inv_min + std::exp2(std::min(n_total * target_rate, 996.0)) / h_min;
  hi = std::min(hi, cap);
  while (rate_at(hi) < target_rate && hi < cap) hi = std::min(hi * 2.0, cap);

  const double tol = 1e-12 * target_rate;
  double mid = hi;
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (lo + hi);
    const double r = rate_at(mid);
    if (std::abs(r - target_rate) <= tol) break;
    if (r < target_rate)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-16 * hi) break;
  }

  for (std::size_t j = 0; j < gains.size(); ++j) {
    const double w = mid - 1.0 / gains[j];
    if (w > 0.0) {
      result.powers[j] = w;
      result.total += w;
    }
  }
  return result;
}

}  // namespace propfair
