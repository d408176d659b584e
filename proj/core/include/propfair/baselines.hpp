#pragma once

#include "propfair/allocator.hpp"
#include "propfair/channel.hpp"

namespace propfair {

// Capacity-only reference: subcarrier n goes to argmax_k h_kn, equal power
// P_total/N everywhere. Ignores fairness; users can end up with nothing.
Allocation greedy_max_rate(const GainGrid& grid, const SystemParams& params);

// Channel-oblivious contiguous blocks in user order; the first N mod K users
// get the larger block.
Assignment static_block_fdma(const SystemParams& params);

}  // namespace propfair
