#include "aec/entangler.hpp"

#include <algorithm>
#include <stdexcept>

#include "aec/block_store.hpp"

namespace aec {

Entangler::Entangler(const CodeParams& params, std::size_t block_size)
    : params_(params), block_size_(block_size) {
  heads_.resize(3);
  for (StrandClass cls : params_.classes()) {
    heads_[static_cast<std::size_t>(cls)].resize(
        static_cast<std::size_t>(params_.strands_of(cls)));
  }
}

Entangler Entangler::resume(const BlockStore& store) {
  Entangler e(store.params(), store.block_size());
  e.counter_ = store.counter();

  // Every strand is touched at least once every s*p nodes, so scanning that
  // far back from the counter finds the current head of each strand.
  const CodeParams& params = e.params_;
  const BlockIndex span =
      static_cast<BlockIndex>(params.s) * std::max(params.p, 1) + params.s;
  const BlockIndex low = std::max<BlockIndex>(1, e.counter_ - span);
  for (BlockIndex i = e.counter_; i >= low; --i) {
    for (StrandClass cls : params.classes()) {
      auto& slot = e.heads_[static_cast<std::size_t>(cls)]
                          [static_cast<std::size_t>(strand_id_of(i, cls, params) - 1)];
      if (slot.has_value()) continue;
      const BlockId edge = make_output_edge(i, cls, params);
      const BlockRecord* rec = store.find(edge);
      if (rec == nullptr || !rec->available) {
        throw std::runtime_error("cannot resume: head parity " +
                                 canonical_id(edge, params) +
                                 " is unavailable; repair the store first");
      }
      slot = rec->payload;
    }
  }
  return e;
}

EntangleResult Entangler::entangle(std::span<const std::uint8_t> data) {
  if (data.size() != block_size_) {
    throw std::invalid_argument("data block size mismatch");
  }
  const BlockIndex i = ++counter_;

  EntangleResult result;
  result.node = BlockId::node(i);
  result.parities.reserve(static_cast<std::size_t>(params_.alpha));
  for (StrandClass cls : params_.classes()) {
    auto& slot = heads_[static_cast<std::size_t>(cls)]
                       [static_cast<std::size_t>(strand_id_of(i, cls, params_) - 1)];
    Payload parity(data.begin(), data.end());
    if (slot.has_value()) {
      xor_into(parity, *slot);
    }
    slot = parity;
    result.parities.push_back({make_output_edge(i, cls, params_), std::move(parity)});
  }
  return result;
}

const Payload* Entangler::head(StrandClass cls, int strand_id) const {
  const auto& slot = heads_[static_cast<std::size_t>(cls)]
                           [static_cast<std::size_t>(strand_id - 1)];
  return slot.has_value() ? &*slot : nullptr;
}

}  // namespace aec
