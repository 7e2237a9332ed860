#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "aec/block_id.hpp"
#include "aec/lattice.hpp"
#include "aec/payload.hpp"

namespace aec {

class BlockStore;

struct EntangledParity {
  BlockId id;
  Payload payload;
};

struct EntangleResult {
  BlockId node;
  std::vector<EntangledParity> parities;  // one per strand class, H/RH/LH order
};

/// Streaming entangler. Keeps a counter of the last processed data block and
/// the head parity of every strand; entangling block d_i XORs the data with
/// each strand's head and the results become the new heads. A strand that
/// has not been touched yet has the all-zero virtual head, so its first
/// parity equals the data block. Strictly sequential per lattice.
class Entangler {
 public:
  Entangler(const CodeParams& params, std::size_t block_size);

  /// Rebuilds counter and strand heads from the last parities in a store.
  /// Throws std::runtime_error if a required head parity is unavailable.
  static Entangler resume(const BlockStore& store);

  const CodeParams& params() const { return params_; }
  std::size_t block_size() const { return block_size_; }
  BlockIndex counter() const { return counter_; }

  EntangleResult entangle(std::span<const std::uint8_t> data);

  /// Head payload of a strand, or nullptr while the strand is still virtual
  /// (all-zero). strand_id is 1-based.
  const Payload* head(StrandClass cls, int strand_id) const;

 private:
  CodeParams params_;
  std::size_t block_size_;
  BlockIndex counter_ = 0;
  std::vector<std::vector<std::optional<Payload>>> heads_;  // [class][strand-1]
};

}  // namespace aec
