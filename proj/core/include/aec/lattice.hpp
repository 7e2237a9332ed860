#pragma once

#include <array>
#include <optional>

#include "aec/block_id.hpp"
#include "aec/params.hpp"

namespace aec {

// Pure index arithmetic for the helical lattice. Nodes are 1-based; the
// lattice itself is unbounded, so none of these functions take a window.
//
// Entanglement rules for a node d_i, by category and strand class:
//
//   input  p_{h,i}          H        RH                  LH
//     top                  i-s       i-s*p+(s^2-1)       i-(s-1)
//     central              i-s       i-(s+1)             i-(s-1)
//     bottom               i-s       i-(s+1)             i-s*p+(s-1)^2
//
//   output p_{i,j}          H        RH                  LH
//     top                  i+s       i+s+1               i+s*p-(s-1)^2
//     central              i+s       i+s+1               i+s-1
//     bottom               i+s       i+s*p-(s^2-1)       i+s-1
//
// For s=1 every index is a multiple of s, which makes each node both top
// and bottom. The one assignment consistent with the rules being mutual
// inverses is: RH uses the top input rule and the bottom output rule, LH
// the bottom input rule and the top output rule. Both helical classes then
// form chains of stride p.

/// Top iff i = 1 (mod s); Bottom iff i = 0 (mod s); Central otherwise.
/// For s=1 this returns Bottom for every node (see note above).
NodeCategory node_category(BlockIndex i, const CodeParams& params);

/// Index h such that d_i is tangled with p_{h,i}. May be < 1 near the
/// lattice head, in which case no stored parity exists and the entangler
/// substitutes the all-zero virtual parity.
BlockIndex input_parity_index_raw(BlockIndex i, StrandClass cls,
                                  const CodeParams& params);

/// Same as input_parity_index_raw but nullopt when the computed index falls
/// off the lattice (strand head).
std::optional<BlockIndex> input_parity_index(BlockIndex i, StrandClass cls,
                                             const CodeParams& params);

/// Index j such that entangling d_i creates p_{i,j}. Always > i.
BlockIndex output_parity_index(BlockIndex i, StrandClass cls,
                               const CodeParams& params);

/// The two parities adjacent to d_i on one strand; enough to repair d_i.
/// input is nullopt when d_i is the first node of the strand.
struct IncidentTuple {
  StrandClass cls = StrandClass::H;
  std::optional<BlockId> input;
  BlockId output;

  bool head() const { return !input.has_value(); }
};

struct IncidentTuples {
  std::array<IncidentTuple, 3> items{};
  int count = 0;

  const IncidentTuple* begin() const { return items.data(); }
  const IncidentTuple* end() const { return items.data() + count; }
  const IncidentTuple& operator[](int k) const { return items[static_cast<std::size_t>(k)]; }
};

/// One (input edge, output edge) pair per strand class, in H, RH, LH order.
IncidentTuples incident_tuples(BlockIndex i, const CodeParams& params);

/// Which strand of the class runs through node i (1-based, stable along the
/// strand). H strands are numbered by row; helical strands so that node 1
/// lies on RH_1, and the lattice in use here puts d_26 of AE(3,5,5) on LH_2.
int strand_id_of(BlockIndex i, StrandClass cls, const CodeParams& params);

/// How many classes produce an edge (i, j); 0 means no such edge exists.
/// Values > 1 occur only in the degenerate settings noted in block_id.hpp.
int edge_class_multiplicity(BlockIndex i, BlockIndex j, const CodeParams& params);

/// Edge created by entangling d_i on class cls.
inline BlockId make_output_edge(BlockIndex i, StrandClass cls,
                                const CodeParams& params) {
  return BlockId::edge(cls, i, output_parity_index(i, cls, params));
}

}  // namespace aec
