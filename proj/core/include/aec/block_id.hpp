#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "aec/params.hpp"

namespace aec {

/// Identifies one block of a lattice: either a data block d_i (a node) or a
/// parity block p_{i,j} (an edge). Edges carry their strand class because a
/// few degenerate settings (s=1 with alpha=3, and AE(3,2,2)) produce two
/// distinct parity blocks with the same endpoints.
struct BlockId {
  enum class Kind : std::uint8_t { Node, Edge };

  Kind kind = Kind::Node;
  StrandClass cls = StrandClass::H;  // meaningful for edges only
  BlockIndex i = 0;
  BlockIndex j = 0;  // 0 for nodes

  static BlockId node(BlockIndex i) { return {Kind::Node, StrandClass::H, i, 0}; }
  static BlockId edge(StrandClass cls, BlockIndex i, BlockIndex j) {
    return {Kind::Edge, cls, i, j};
  }

  bool is_node() const { return kind == Kind::Node; }
  bool is_edge() const { return kind == Kind::Edge; }

  bool operator==(const BlockId&) const = default;
  auto operator<=>(const BlockId&) const = default;
};

struct BlockIdHash {
  std::size_t operator()(const BlockId& id) const;
};

/// Canonical id string: "d<i>" for nodes, "p<i>-<j>" for edges. When more
/// than one strand class yields the same (i,j) pair under these params the
/// class tag is appended ("p2-6-rh") so every block keeps a unique key.
std::string canonical_id(const BlockId& id, const CodeParams& params);

/// Parses a canonical id back. Returns nullopt for malformed strings or ids
/// that do not name an edge of this lattice.
std::optional<BlockId> parse_id(std::string_view text, const CodeParams& params);

}  // namespace aec
