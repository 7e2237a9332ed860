#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "aec/block_id.hpp"
#include "aec/block_store.hpp"
#include "aec/payload.hpp"

namespace aec {

enum class RepairMode {
  /// Repair every unavailable block reachable by the decoder.
  FullMaintenance,
  /// Repair data blocks; repair a parity only when it is (transitively)
  /// required as a tuple member for some still-missing data block. Parities
  /// lost on their own stay unrepaired.
  MinimalMaintenance,
};

struct RepairResult {
  Payload payload;
  StrandClass via = StrandClass::H;
  int reads = 0;  // 2, or 1 when one input is the virtual zero head
};

/// Repairs node d_i from a complete pp-tuple, trying strand classes in
/// H, RH, LH order. nullopt when no class has both edges available.
std::optional<RepairResult> repair_node(BlockIndex i, const BlockStore& store,
                                        const CodeParams& params);

/// Repairs edge p_{i,j} from a complete dp-tuple: first (d_i, input edge of
/// d_i), then (d_j, output edge of d_j). nullopt when neither is complete.
std::optional<RepairResult> repair_edge(const BlockId& edge, const BlockStore& store,
                                        const CodeParams& params);

struct RoundStats {
  std::int64_t repaired_blocks = 0;
  std::int64_t repaired_data = 0;
  std::int64_t reads = 0;
};

struct RepairReport {
  /// One entry per executed round, including the final round that repaired
  /// nothing (fixpoint detection), unless max_rounds cut the run short.
  std::vector<RoundStats> rounds;
  std::int64_t unrecovered_blocks = 0;
  std::int64_t unrecovered_data = 0;

  std::int64_t total_repaired() const;
  std::int64_t total_data_repaired() const;
  /// 1-based index of the last round that repaired a data block; 0 if none.
  int rounds_to_data_fixpoint() const;
};

/// Iterates repair rounds to a fixpoint. Every attempt in a round reads only
/// blocks that were available when the round started; repairs apply at the
/// round boundary.
RepairReport repair_all(BlockStore& store, const CodeParams& params,
                        RepairMode mode = RepairMode::FullMaintenance,
                        int max_rounds = 100);

}  // namespace aec
