#include "propfair/channel.hpp"

#include <cmath>
#include <numbers>

#include "propfair/errors.hpp"

namespace propfair {

std::vector<double> PowerDelayProfile::normalized_linear_powers() const {
  validate();
  std::vector<double> linear(relative_powers_db.size());
  double sum = 0.0;
  for (std::size_t t = 0; t < relative_powers_db.size(); ++t) {
    linear[t] = std::pow(10.0, relative_powers_db[t] / 10.0);
    sum += linear[t];
  }
  for (double& p : linear) p /= sum;
  return linear;
}

void PowerDelayProfile::validate() const {
  if (relative_powers_db.empty())
    throw ValidationError("channel.tap_powers_db: profile must have at least one tap");
  for (double db : relative_powers_db) {
    if (!std::isfinite(db))
      throw ValidationError("channel.tap_powers_db: tap powers must be finite");
  }
}

PowerDelayProfile PowerDelayProfile::six_tap_exponential() {
  return PowerDelayProfile{{0.0, -4.35, -8.69, -13.08, -17.43, -21.78}};
}

void SystemParams::validate() const {
  if (num_users < 1)
    throw ValidationError("system.num_users: must be >= 1");
  if (num_subcarriers < num_users)
    throw ValidationError("system.num_subcarriers: must be >= num_users");
  if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz))
    throw ValidationError("system.bandwidth_hz: must be > 0");
  if (!(noise_density_w_per_hz > 0.0) || !std::isfinite(noise_density_w_per_hz))
    throw ValidationError("system.noise_density: must be > 0 in linear units");
  if (!(total_power_w > 0.0) || !std::isfinite(total_power_w))
    throw ValidationError("system.total_power_w: must be > 0");
}

double dbm_per_hz_to_w_per_hz(double dbm_per_hz) {
  return std::pow(10.0, dbm_per_hz / 10.0) * 1e-3;
}

double w_per_hz_to_dbm_per_hz(double w_per_hz) {
  return 10.0 * std::log10(w_per_hz * 1e3);
}

void GainGrid::validate() const {
  if (num_users < 1 || num_subcarriers < 1 ||
      values.size() != static_cast<std::size_t>(num_users) * num_subcarriers)
    throw ValidationError("gain grid: dimensions do not match the value count");
  for (double h : values) {
    if (!std::isfinite(h) || h < 0.0)
      throw ValidationError("gain grid: entries must be finite and >= 0");
  }
}

std::vector<std::complex<double>> generate_taps(const PowerDelayProfile& profile,
                                                SplitMix64& rng) {
  const std::vector<double> powers = profile.normalized_linear_powers();
  std::vector<std::complex<double>> taps(powers.size());
  for (std::size_t t = 0; t < powers.size(); ++t) {
    const auto [re, im] = standard_normal_pair(rng);
    const double sigma = std::sqrt(powers[t] / 2.0);
    taps[t] = {sigma * re, sigma * im};
  }
  return taps;
}

std::vector<std::complex<double>> generate_taps(const PowerDelayProfile& profile,
                                                std::uint64_t seed) {
  SplitMix64 rng(seed);
  return generate_taps(profile, rng);
}

std::vector<std::complex<double>> frequency_response(
    const std::vector<std::complex<double>>& taps, int num_subcarriers) {
  if (static_cast<int>(taps.size()) > num_subcarriers)
    throw ValidationError("frequency_response: more taps than subcarriers");
  std::vector<std::complex<double>> response(static_cast<std::size_t>(num_subcarriers));
  for (int n = 0; n < num_subcarriers; ++n) {
    std::complex<double> z{0.0, 0.0};
    for (std::size_t t = 0; t < taps.size(); ++t) {
      const double angle = -2.0 * std::numbers::pi * n * static_cast<double>(t) /
                           num_subcarriers;
      z += taps[t] * std::polar(1.0, angle);
    }
    response[static_cast<std::size_t>(n)] = z;
  }
  return response;
}

GainGrid snr_grid(const SystemParams& params, const PowerDelayProfile& profile,
                  std::uint64_t seed) {
  params.validate();
  const double noise = params.noise_power_per_subcarrier();
  GainGrid grid{params.num_users, params.num_subcarriers,
                std::vector<double>(static_cast<std::size_t>(params.num_users) *
                                    params.num_subcarriers)};
  for (int k = 0; k < params.num_users; ++k) {
    SplitMix64 rng(derive_stream(seed, static_cast<std::uint64_t>(k)));
    const auto taps = generate_taps(profile, rng);
    const auto z = frequency_response(taps, params.num_subcarriers);
    for (int n = 0; n < params.num_subcarriers; ++n)
      grid.at(k, n) = std::norm(z[static_cast<std::size_t>(n)]) / noise;
  }
  return grid;
}

}  // namespace propfair
