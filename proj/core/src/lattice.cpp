#include "aec/lattice.hpp"

#include <cassert>

namespace aec {

NodeCategory node_category(BlockIndex i, const CodeParams& params) {
  assert(i >= 1);
  const BlockIndex r = i % params.s;
  if (params.s == 1) return NodeCategory::Bottom;
  if (r == 1) return NodeCategory::Top;
  if (r == 0) return NodeCategory::Bottom;
  return NodeCategory::Central;
}

BlockIndex input_parity_index_raw(BlockIndex i, StrandClass cls,
                                  const CodeParams& params) {
  const BlockIndex s = params.s;
  const BlockIndex p = params.p;
  if (cls == StrandClass::H) return i - s;

  if (s == 1) return i - p;  // both helical classes: stride-p chains

  switch (node_category(i, params)) {
    case NodeCategory::Top:
      return cls == StrandClass::RH ? i - s * p + (s * s - 1) : i - (s - 1);
    case NodeCategory::Central:
      return cls == StrandClass::RH ? i - (s + 1) : i - (s - 1);
    case NodeCategory::Bottom:
      return cls == StrandClass::RH ? i - (s + 1) : i - s * p + (s - 1) * (s - 1);
  }
  return 0;  // unreachable
}

std::optional<BlockIndex> input_parity_index(BlockIndex i, StrandClass cls,
                                             const CodeParams& params) {
  const BlockIndex h = input_parity_index_raw(i, cls, params);
  if (h < 1) return std::nullopt;
  return h;
}

BlockIndex output_parity_index(BlockIndex i, StrandClass cls,
                               const CodeParams& params) {
  const BlockIndex s = params.s;
  const BlockIndex p = params.p;
  if (cls == StrandClass::H) return i + s;

  if (s == 1) return i + p;

  switch (node_category(i, params)) {
    case NodeCategory::Top:
      return cls == StrandClass::RH ? i + s + 1 : i + s * p - (s - 1) * (s - 1);
    case NodeCategory::Central:
      return cls == StrandClass::RH ? i + s + 1 : i + s - 1;
    case NodeCategory::Bottom:
      return cls == StrandClass::RH ? i + s * p - (s * s - 1) : i + s - 1;
  }
  return 0;  // unreachable
}

IncidentTuples incident_tuples(BlockIndex i, const CodeParams& params) {
  IncidentTuples tuples;
  for (StrandClass cls : params.classes()) {
    IncidentTuple t;
    t.cls = cls;
    if (auto h = input_parity_index(i, cls, params)) {
      t.input = BlockId::edge(cls, *h, i);
    }
    t.output = make_output_edge(i, cls, params);
    tuples.items[static_cast<std::size_t>(tuples.count++)] = t;
  }
  return tuples;
}

int strand_id_of(BlockIndex i, StrandClass cls, const CodeParams& params) {
  assert(i >= 1);
  const BlockIndex s = params.s;
  const BlockIndex row = (i - 1) % s + 1;
  const BlockIndex col = (i - 1) / s + 1;
  if (cls == StrandClass::H) return static_cast<int>(row);

  assert(params.p > 0);
  const BlockIndex p = params.p;
  if (cls == StrandClass::RH) {
    // col - row is invariant along a right-handed strand (mod p).
    BlockIndex r = (col - row) % p;
    if (r < 0) r += p;
    return static_cast<int>(r + 1);
  }
  // row + col is invariant along a left-handed strand (mod p).
  BlockIndex r = (row + col) % p;
  return static_cast<int>(r == 0 ? p : r);
}

int edge_class_multiplicity(BlockIndex i, BlockIndex j, const CodeParams& params) {
  int count = 0;
  for (StrandClass cls : params.classes()) {
    if (output_parity_index(i, cls, params) == j) ++count;
  }
  return count;
}

}  // namespace aec
