#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "aec/block_id.hpp"
#include "aec/params.hpp"

namespace aec {

/// Fixpoint decoder over a bounded lattice window: nodes 1..node_count plus
/// the edges they create. Blocks outside the window are pinned available
/// (optimistic boundary), so window effects can only make erasures easier to
/// recover, never harder. Availability-only; shares the tuple rules of the
/// payload decoder, which the tests cross-check.
class WindowDecoder {
 public:
  WindowDecoder(const CodeParams& params, BlockIndex node_count);

  std::int64_t node_count() const { return node_count_; }
  std::int64_t total_slots() const { return node_count_ * (1 + params_.alpha); }

  std::int64_t slot_of(const BlockId& id) const;  // throws if out of window
  BlockId id_of(std::int64_t slot) const;

  struct DecodeStats {
    std::int64_t repaired = 0;
    std::int64_t unrecovered_nodes = 0;
    std::int64_t unrecovered_edges = 0;
  };

  /// Erases the given slots, runs repair rounds to a fixpoint, restores the
  /// window. Not thread-safe; use one decoder per thread.
  DecodeStats decode(std::span<const std::int64_t> erased_slots);

  const CodeParams& params() const { return params_; }

 private:
  CodeParams params_;
  std::int64_t node_count_;
  std::vector<std::uint8_t> erased_;
  std::vector<std::int64_t> in_off_;   // [class * s + i % s]
  std::vector<std::int64_t> out_off_;
};

/// True iff erasing `pattern` still lets the fixpoint decoder recover every
/// erased data block (erased parities may stay lost).
bool is_recoverable(std::span<const BlockId> pattern, BlockIndex window_nodes,
                    const CodeParams& params);

/// An irreducible erasure: the fixpoint decoder recovers nothing from it,
/// and removing any single member makes the whole pattern recoverable.
struct ErasurePattern {
  std::vector<BlockId> blocks;  // sorted: nodes then edges
  int data_loss = 0;            // member nodes, all unrecoverable
  int size = 0;                 // total members
};

struct MeBudget {
  std::int64_t max_node_sets = 50'000'000;  // anchor sets examined
  std::int64_t max_patterns = 100'000;      // candidates verified
};

struct MeResult {
  std::vector<ErasurePattern> patterns;  // deduplicated up to s-translation
  std::optional<int> min_size;
  bool complete = true;  // false once a budget bound was hit
  std::int64_t node_sets_examined = 0;
  std::int64_t candidates_verified = 0;
};

/// All irreducible unrecoverable patterns with exactly x data blocks and
/// size <= max_size, one representative per translation class. The search
/// walks anchor node sets (every erased edge run must start and end at an
/// erased node) and verifies each candidate against the decoder.
MeResult enumerate_me(const CodeParams& params, BlockIndex window_nodes,
                      int max_size, int x, const MeBudget& budget = {});

struct MinMeResult {
  std::optional<int> min_size;
  std::int64_t pattern_count = 0;  // patterns of exactly min_size
  std::vector<BlockId> example;
  bool complete = true;
};

/// Minimum pattern size causing the loss of exactly x data blocks; the
/// function behind the fault-tolerance tables.
MinMeResult min_me_size(const CodeParams& params, int x,
                        BlockIndex window_nodes = 60, int max_size = 20,
                        const MeBudget& budget = {});

struct MeCsvRow {
  CodeParams params;
  int x = 0;
  MinMeResult result;
};

/// CSV columns: params,x,min_size,pattern_count,example_pattern,complete_flag.
void write_me_csv(std::ostream& out, std::span<const MeCsvRow> rows);

}  // namespace aec
