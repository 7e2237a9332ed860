#include "aec/tamper.hpp"

#include <stdexcept>

#include "aec/lattice.hpp"

namespace aec {

std::vector<BlockId> tamper_set(BlockIndex i, BlockIndex window_end,
                                const CodeParams& params) {
  if (i < 1 || window_end < i) {
    throw std::invalid_argument("tamper_set requires 1 <= i <= window_end");
  }
  std::vector<BlockId> blocks;
  for (StrandClass cls : params.classes()) {
    for (BlockIndex n = i; n <= window_end;) {
      const BlockIndex next = output_parity_index(n, cls, params);
      blocks.push_back(BlockId::edge(cls, n, next));
      n = next;
    }
  }
  return blocks;
}

}  // namespace aec
