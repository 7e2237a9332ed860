#pragma once

#include <cstdint>
#include <vector>

#include "aec/block_id.hpp"
#include "aec/params.hpp"

namespace aec {

/// A sealed bucket is a data block together with the alpha parities its
/// entanglement creates. The scheduler groups a pending stream into column
/// batches (one node per horizontal strand) and classifies each parity by
/// whether its XOR input still sits in the one-column working memory.
///
/// With s = p every input comes from the previous column, so all buckets of
/// a batch seal immediately and batches are maximal parallel full-writes.
/// With p > s the helical wrap parities (the top node's RH input and the
/// bottom node's LH input) reference a column p-s+1 batches back, which has
/// already been flushed. FullWrites stalls the batch to refetch those
/// parities; PartialWrites writes such buckets without them and seals them
/// one batch later.
enum class WritePolicy { FullWrites, PartialWrites };

struct ScheduledParity {
  BlockId id;
  bool immediate = true;  // input held in the one-column working memory
};

struct WriteBucket {
  BlockId node;
  std::vector<ScheduledParity> parities;
  bool sealed = true;  // all parities written in this batch
};

struct WriteBatch {
  std::vector<WriteBucket> buckets;
  std::vector<BlockId> seals;  // parities deferred from earlier batches
  bool full_write = true;
  std::int64_t parities_computed = 0;
  std::int64_t fetched_inputs = 0;  // inputs older than the previous column
  std::int64_t memory_parities = 0; // inputs held + outputs produced
};

struct WriteSchedule {
  CodeParams params;
  WritePolicy policy = WritePolicy::FullWrites;
  std::vector<WriteBatch> batches;
  std::int64_t full_batches = 0;
  std::int64_t partial_buckets = 0;
  std::int64_t deferred_parities = 0;
  std::int64_t peak_memory_parities = 0;
};

WriteSchedule schedule_writes(std::int64_t num_blocks, const CodeParams& params,
                              WritePolicy policy,
                              BlockIndex first_index = 1);

}  // namespace aec
