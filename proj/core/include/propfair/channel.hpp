#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "propfair/rng.hpp"

namespace propfair {

// Average multipath tap powers in dB relative to the first tap. Linear powers
// are normalized to sum to 1, so the mean channel energy is 1 and the SNR
// range is set entirely by the noise level and power budget.
struct PowerDelayProfile {
  std::vector<double> relative_powers_db;

  // Linear per-tap powers scaled to sum to 1.
  std::vector<double> normalized_linear_powers() const;
  void validate() const;

  // Six-tap exponentially decaying profile used by the shipped configs.
  static PowerDelayProfile six_tap_exponential();
};

struct SystemParams {
  int num_users = 0;        // K
  int num_subcarriers = 0;  // N
  double bandwidth_hz = 0.0;
  double noise_density_w_per_hz = 0.0;  // linear; configs store dBm/Hz
  double total_power_w = 0.0;

  double noise_power_per_subcarrier() const {
    return noise_density_w_per_hz * bandwidth_hz / num_subcarriers;
  }
  double equal_power_per_subcarrier() const {
    return total_power_w / num_subcarriers;
  }
  void validate() const;
};

double dbm_per_hz_to_w_per_hz(double dbm_per_hz);
double w_per_hz_to_dbm_per_hz(double w_per_hz);

// Per-user, per-subcarrier SNR coefficients: entry (k, n) is
// |z_kn|^2 / (N0 * B / N). Multiplying by an allocated power gives the SNR on
// that subcarrier.
struct GainGrid {
  int num_users = 0;
  int num_subcarriers = 0;
  std::vector<double> values;  // row-major, user-major

  double at(int user, int sub) const {
    return values[static_cast<std::size_t>(user) * num_subcarriers + sub];
  }
  double& at(int user, int sub) {
    return values[static_cast<std::size_t>(user) * num_subcarriers + sub];
  }
  void validate() const;
};

// One Rayleigh realization: tap t is a zero-mean circularly-symmetric complex
// Gaussian with variance equal to the normalized linear power of tap t.
std::vector<std::complex<double>> generate_taps(const PowerDelayProfile& profile,
                                                SplitMix64& rng);
std::vector<std::complex<double>> generate_taps(const PowerDelayProfile& profile,
                                                std::uint64_t seed);

// N-point DFT of the zero-padded tap vector:
//   z_n = sum_t taps[t] * exp(-j*2*pi*n*t/N).
// Satisfies Parseval: sum_n |z_n|^2 == N * sum_t |tap_t|^2.
std::vector<std::complex<double>> frequency_response(
    const std::vector<std::complex<double>>& taps, int num_subcarriers);

// K independent channel realizations scaled by 1/(N0*B/N). User k draws from
// the sub-stream derive_stream(seed, k); the result is a pure function of
// (seed, params, profile).
GainGrid snr_grid(const SystemParams& params, const PowerDelayProfile& profile,
                  std::uint64_t seed);

}  // namespace propfair
