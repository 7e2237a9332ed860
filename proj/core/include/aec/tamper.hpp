#pragma once

#include <vector>

#include "aec/block_id.hpp"
#include "aec/params.hpp"

namespace aec {

/// All parities an attacker would have to recompute to modify d_i without
/// detection, within a lattice bounded at window_end: for each of the alpha
/// strands through d_i, every parity created by a strand node in
/// [i, window_end]. Ordered class-major (H, RH, LH), walking downstream.
std::vector<BlockId> tamper_set(BlockIndex i, BlockIndex window_end,
                                const CodeParams& params);

}  // namespace aec
