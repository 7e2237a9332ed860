#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <unordered_map>
#include <vector>

#include "aec/block_id.hpp"
#include "aec/payload.hpp"

namespace aec {

struct BlockRecord {
  Payload payload;          // meaningful only while available
  bool available = true;
  bool repaired = false;
  std::int32_t location = -1;  // placement slot, -1 when unassigned
};

/// World state for one lattice: every created block with its payload,
/// availability and repaired flag. Supports concurrent reads; writes are
/// batched by the repair round driver.
///
/// On-disk layout (save/load): a directory with a line-oriented
/// `manifest.txt` (`key=value`: format, alpha, s, p, block_size, counter,
/// input_size) and a `blocks/` subdirectory holding one raw payload file per
/// available block, named by canonical id. Blocks the manifest implies but
/// whose file is missing load as unavailable records.
class BlockStore {
 public:
  BlockStore(const CodeParams& params, std::size_t block_size);

  const CodeParams& params() const { return params_; }
  std::size_t block_size() const { return block_size_; }

  /// Last entangled node index.
  BlockIndex counter() const { return counter_; }
  void set_counter(BlockIndex c) { counter_ = c; }

  /// Original byte length of the encoded input (before zero padding);
  /// counter * block_size when encoding synthetic blocks.
  std::uint64_t input_size() const { return input_size_; }
  void set_input_size(std::uint64_t n) { input_size_ = n; }

  std::size_t size() const { return blocks_.size(); }

  void put(const BlockId& id, Payload payload);
  /// Availability-only record (simulation worlds, erasure bookkeeping).
  void put_placeholder(const BlockId& id, bool available);

  bool contains(const BlockId& id) const { return blocks_.contains(id); }
  bool available(const BlockId& id) const;
  const BlockRecord* find(const BlockId& id) const;

  void set_available(const BlockId& id, bool available);
  void set_location(const BlockId& id, std::int32_t location);
  void mark_repaired(const BlockId& id, Payload payload);

  /// Ids of all tracked blocks that are currently unavailable, sorted for
  /// deterministic iteration.
  std::vector<BlockId> missing_ids() const;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (const auto& [id, rec] : blocks_) fn(id, rec);
  }

  void save(const std::filesystem::path& dir) const;
  static BlockStore load(const std::filesystem::path& dir);

 private:
  CodeParams params_;
  std::size_t block_size_;
  BlockIndex counter_ = 0;
  std::uint64_t input_size_ = 0;
  std::unordered_map<BlockId, BlockRecord, BlockIdHash> blocks_;
};

}  // namespace aec
