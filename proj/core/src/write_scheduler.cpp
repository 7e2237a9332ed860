#include "aec/write_scheduler.hpp"

#include <algorithm>
#include <stdexcept>

#include "aec/lattice.hpp"

namespace aec {

namespace {

BlockIndex column_of(BlockIndex i, const CodeParams& params) {
  return (i - 1) / params.s + 1;
}

}  // namespace

WriteSchedule schedule_writes(std::int64_t num_blocks, const CodeParams& params,
                              WritePolicy policy, BlockIndex first_index) {
  if (num_blocks < 0 || first_index < 1) {
    throw std::invalid_argument("schedule_writes: bad arguments");
  }
  WriteSchedule schedule;
  schedule.params = params;
  schedule.policy = policy;

  std::vector<BlockId> carry;  // parities awaiting their refetched input
  BlockIndex i = first_index;
  const BlockIndex end = first_index + num_blocks;
  while (i < end) {
    const BlockIndex col = column_of(i, params);
    WriteBatch batch;
    batch.seals = std::move(carry);
    carry.clear();

    std::int64_t stale_inputs = 0;
    for (; i < end && column_of(i, params) == col; ++i) {
      WriteBucket bucket;
      bucket.node = BlockId::node(i);
      for (StrandClass cls : params.classes()) {
        ScheduledParity sp;
        sp.id = make_output_edge(i, cls, params);
        const BlockIndex h = input_parity_index_raw(i, cls, params);
        // Virtual heads (h < 1) need no input at all.
        sp.immediate = h < 1 || column_of(h, params) >= col - 1;
        if (!sp.immediate) ++stale_inputs;
        bucket.parities.push_back(sp);
      }
      if (policy == WritePolicy::PartialWrites) {
        for (const ScheduledParity& sp : bucket.parities) {
          if (!sp.immediate) {
            bucket.sealed = false;
            carry.push_back(sp.id);
          }
        }
      }
      batch.parities_computed += bucket.sealed
                                     ? static_cast<std::int64_t>(bucket.parities.size())
                                     : static_cast<std::int64_t>(std::count_if(
                                           bucket.parities.begin(), bucket.parities.end(),
                                           [](const ScheduledParity& sp) { return sp.immediate; }));
      if (!bucket.sealed) ++schedule.partial_buckets;
      batch.buckets.push_back(std::move(bucket));
    }

    batch.fetched_inputs = policy == WritePolicy::FullWrites ? stale_inputs : 0;
    batch.full_write = std::all_of(batch.buckets.begin(), batch.buckets.end(),
                                   [](const WriteBucket& b) { return b.sealed; });
    batch.parities_computed += static_cast<std::int64_t>(batch.seals.size());
    // Working set: one prior column of parities plus this batch's outputs
    // and any refetched stale inputs.
    batch.memory_parities =
        static_cast<std::int64_t>(params.alpha) * params.s + batch.parities_computed +
        batch.fetched_inputs;
    if (batch.full_write) ++schedule.full_batches;
    schedule.deferred_parities += static_cast<std::int64_t>(carry.size());
    schedule.peak_memory_parities =
        std::max(schedule.peak_memory_parities, batch.memory_parities);
    schedule.batches.push_back(std::move(batch));
  }
  if (!carry.empty()) {
    WriteBatch tail;
    tail.seals = std::move(carry);
    tail.parities_computed = static_cast<std::int64_t>(tail.seals.size());
    tail.memory_parities = tail.parities_computed;
    schedule.batches.push_back(std::move(tail));
  }
  return schedule;
}

}  // namespace aec
