#pragma once

#include <span>
#include <vector>

#include "propfair/channel.hpp"

namespace propfair {

// Positive per-user proportions; rates are steered toward
// R_1 : ... : R_K == phi_1 : ... : phi_K.
struct FairnessWeights {
  std::vector<double> phi;

  double sum() const;
  void validate(int num_users) const;
  static FairnessWeights uniform(int num_users);
};

// Disjoint per-user subcarrier index sets.
struct Assignment {
  std::vector<std::vector<int>> sets;  // sets[k]: ascending subcarrier indices

  int num_users() const { return static_cast<int>(sets.size()); }
  std::vector<int> cardinalities() const;
  // True when the sets are pairwise disjoint and cover 0..num_subcarriers-1.
  bool is_partition(int num_subcarriers) const;
};

// Assignment plus per-subcarrier powers; powers[k][i] belongs to
// assignment.sets[k][i].
struct Allocation {
  Assignment assignment;
  std::vector<std::vector<double>> powers;

  double total_power() const;
};

// Rate shares versus desired shares. xi_k = phi_k/sum_phi - R_k/sum_R, and
// delta is the mean absolute deviation (1/K) * sum |xi_k|; 0 means the rates
// are exactly in the desired proportions.
struct DeviationReport {
  std::vector<double> xi;
  double delta = 0.0;
  std::vector<double> rates;
  double sum_rate = 0.0;
};

// Which way the per-iteration power quantum moves.
//   to_underserved: from the user above its desired rate share (min xi) to the
//     user below it (max xi). Default; this is the direction that reduces
//     delta.
//   from_underserved: the reverse mapping, exposed for study via the CLI flag
//     --literal-pseudocode.
enum class TransferDirection { to_underserved, from_underserved };

enum class StopReason {
  converged,        // K == 1 or delta already 0; nothing to exchange
  no_improvement,   // an exchange failed to reduce delta and was reverted
  donor_exhausted,  // donor user's budget fell below the step size
  max_iterations,
};

struct ReallocationOutcome {
  Allocation allocation;
  DeviationReport report;
  int iterations = 0;  // accepted exchanges
  StopReason stop = StopReason::converged;
  std::vector<double> delta_trace;  // initial delta, then one entry per accepted exchange
};

// Greedy proportional subcarrier allocation under equal per-subcarrier power
// p = P_total/N. Each user first takes its best subcarrier (ascending user
// order, or the given permutation); then, while subcarriers remain, the user
// with the lowest R_k/phi_k takes its best remaining one. Ties resolve to the
// lowest user/subcarrier index.
Assignment allocate_subcarriers(const GainGrid& grid, const FairnessWeights& weights,
                                const SystemParams& params);
Assignment allocate_subcarriers(const GainGrid& grid, const FairnessWeights& weights,
                                const SystemParams& params,
                                std::span<const int> user_order);

DeviationReport proportionality_deviation(std::span<const double> rates,
                                          const FairnessWeights& weights);

// R_k = (1/N) * sum_{n in S_k} log2(1 + p_kn * h_kn), in bps/Hz.
std::vector<double> user_rates(const Allocation& allocation, const GainGrid& grid,
                               const SystemParams& params);

// Equal split P_total/N on every assigned subcarrier.
Allocation equal_power_allocation(const Assignment& assignment,
                                  const SystemParams& params);

// Iterative power exchange between the two most-deviating users. Each
// iteration moves delta_step watts between them, re-water-fills both users'
// budgets over their own sets, and keeps the exchange only if delta strictly
// decreases; the first non-improving exchange is reverted and the loop stops.
ReallocationOutcome reallocate_power(const Assignment& assignment, const GainGrid& grid,
                                     const FairnessWeights& weights,
                                     const SystemParams& params, double delta_step,
                                     int max_iterations,
                                     TransferDirection direction = TransferDirection::to_underserved);

}  // namespace propfair
