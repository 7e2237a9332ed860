#include "aec/me_analysis.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "aec/lattice.hpp"

namespace aec {

// ---------------------------------------------------------------------------
// WindowDecoder
// ---------------------------------------------------------------------------

WindowDecoder::WindowDecoder(const CodeParams& params, BlockIndex node_count)
    : params_(params),
      node_count_(node_count),
      erased_(static_cast<std::size_t>(node_count * (1 + params.alpha)), 0),
      in_off_(static_cast<std::size_t>(3 * params.s), 0),
      out_off_(static_cast<std::size_t>(3 * params.s), 0) {
  if (node_count < 1) throw std::invalid_argument("window needs >= 1 node");
  const BlockIndex base =
      2 * static_cast<BlockIndex>(params_.s) * std::max(params_.p, 1) + params_.s;
  for (int r = 0; r < params_.s; ++r) {
    const BlockIndex i0 = base + r + 1;
    for (int c = 0; c < params_.alpha; ++c) {
      const StrandClass cls = params_.classes()[static_cast<std::size_t>(c)];
      const std::size_t slot = static_cast<std::size_t>(c * params_.s + i0 % params_.s);
      in_off_[slot] = i0 - input_parity_index_raw(i0, cls, params_);
      out_off_[slot] = output_parity_index(i0, cls, params_) - i0;
    }
  }
}

std::int64_t WindowDecoder::slot_of(const BlockId& id) const {
  if (id.is_node()) {
    if (id.i < 1 || id.i > node_count_) throw std::out_of_range("node outside window");
    return id.i - 1;
  }
  if (id.i < 1 || id.i > node_count_) throw std::out_of_range("edge outside window");
  int c = -1;
  for (int k = 0; k < params_.alpha; ++k) {
    if (params_.classes()[static_cast<std::size_t>(k)] == id.cls) c = k;
  }
  if (c < 0) throw std::out_of_range("edge class not used by these params");
  return node_count_ * (1 + c) + (id.i - 1);
}

BlockId WindowDecoder::id_of(std::int64_t slot) const {
  if (slot < node_count_) return BlockId::node(slot + 1);
  const int c = static_cast<int>(slot / node_count_) - 1;
  const BlockIndex i = slot % node_count_ + 1;
  const StrandClass cls = params_.classes()[static_cast<std::size_t>(c)];
  return BlockId::edge(cls, i, output_parity_index(i, cls, params_));
}

WindowDecoder::DecodeStats WindowDecoder::decode(
    std::span<const std::int64_t> erased_slots) {
  for (const std::int64_t slot : erased_slots) erased_[static_cast<std::size_t>(slot)] = 1;

  const auto edge_erased = [&](int c, BlockIndex i) {
    return erased_[static_cast<std::size_t>(node_count_ * (1 + c) + (i - 1))] != 0;
  };
  const auto node_erased = [&](BlockIndex i) {
    return i > node_count_ ? false : erased_[static_cast<std::size_t>(i - 1)] != 0;
  };

  std::vector<std::int64_t> pending(erased_slots.begin(), erased_slots.end());
  DecodeStats stats;
  // Peeling is monotone, so immediate application reaches the same fixpoint
  // as synchronized rounds; sweep until a pass repairs nothing.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k < pending.size();) {
      const std::int64_t slot = pending[k];
      bool repairable = false;
      if (slot < node_count_) {
        const BlockIndex i = slot + 1;
        for (int c = 0; c < params_.alpha && !repairable; ++c) {
          if (edge_erased(c, i)) continue;
          const BlockIndex h =
              i - in_off_[static_cast<std::size_t>(c * params_.s + i % params_.s)];
          repairable = h < 1 || !edge_erased(c, h);
        }
      } else {
        const int c = static_cast<int>(slot / node_count_) - 1;
        const BlockIndex i = slot % node_count_ + 1;
        const BlockIndex h =
            i - in_off_[static_cast<std::size_t>(c * params_.s + i % params_.s)];
        if (!node_erased(i) && (h < 1 || !edge_erased(c, h))) {
          repairable = true;
        } else {
          const BlockIndex j =
              i + out_off_[static_cast<std::size_t>(c * params_.s + i % params_.s)];
          repairable = j > node_count_ || (!node_erased(j) && !edge_erased(c, j));
        }
      }
      if (repairable) {
        erased_[static_cast<std::size_t>(slot)] = 0;
        pending[k] = pending.back();
        pending.pop_back();
        ++stats.repaired;
        changed = true;
      } else {
        ++k;
      }
    }
  }

  for (const std::int64_t slot : pending) {
    if (slot < node_count_) ++stats.unrecovered_nodes;
    else ++stats.unrecovered_edges;
  }
  for (const std::int64_t slot : erased_slots) erased_[static_cast<std::size_t>(slot)] = 0;
  return stats;
}

bool is_recoverable(std::span<const BlockId> pattern, BlockIndex window_nodes,
                    const CodeParams& params) {
  WindowDecoder decoder(params, window_nodes);
  std::vector<std::int64_t> slots;
  slots.reserve(pattern.size());
  for (const BlockId& id : pattern) slots.push_back(decoder.slot_of(id));
  return decoder.decode(slots).unrecovered_nodes == 0;
}

// ---------------------------------------------------------------------------
// Minimal erasure search.
//
// Structure of a stopping set (a pattern the decoder cannot touch): on every
// strand, the erased edges form runs whose first and last edge are anchored
// by erased nodes at the run boundaries, and every erased node must touch at
// least one erased edge of each of its alpha strands. The search therefore
// walks node sets, groups them per class by strand, and covers each group
// with runs between consecutive group members. Every candidate is verified
// against the decoder before it is reported.
// ---------------------------------------------------------------------------

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

/// Min-cost subset of path gaps covering every vertex (>= 2 vertices).
std::int64_t min_edge_cover(std::span<const std::int64_t> w) {
  std::int64_t uncov = 0, cov = kInf;  // last vertex uncovered / covered
  for (const std::int64_t weight : w) {
    const std::int64_t take = std::min(uncov, cov) + weight;
    const std::int64_t skip = cov;
    uncov = skip;
    cov = take;
  }
  return cov;
}

/// Min-cost subset covering every vertex but the last (the last may later be
/// covered by a gap to a node that is not placed yet).
std::int64_t min_cover_except_last(std::span<const std::int64_t> w) {
  if (w.empty()) return 0;  // single vertex, nothing required yet
  std::int64_t uncov = 0, cov = kInf;
  for (std::size_t k = 0; k + 1 < w.size(); ++k) {
    const std::int64_t take = std::min(uncov, cov) + w[k];
    const std::int64_t skip = cov;
    uncov = skip;
    cov = take;
  }
  // Last gap may be taken or not; the final vertex does not need coverage.
  return std::min(std::min(uncov, cov) + w.back(), cov);
}

struct GroupView {
  std::array<BlockIndex, 8> nodes{};  // ascending lattice indices
  std::array<std::int64_t, 7> gaps{}; // hop distances between consecutive
  int count = 0;
};

class MeSearch {
 public:
  MeSearch(const CodeParams& params, BlockIndex window_nodes, int max_size, int x,
           const MeBudget& budget)
      : params_(params),
        window_(window_nodes),
        max_size_(max_size),
        x_(x),
        budget_(budget),
        decoder_(params, window_nodes) {
    if (x < 1) throw std::invalid_argument("x must be >= 1");
    if (max_size < 1) throw std::invalid_argument("max_size must be >= 1");

    margin_ = static_cast<BlockIndex>(params_.s) * std::max(params_.p, 1) + 1;
    if (margin_ + x_ > window_) {
      throw std::invalid_argument("analysis window too small for these params");
    }

    strand_of_.assign(3, std::vector<int>(static_cast<std::size_t>(window_) + 1, -1));
    pos_of_.assign(3, std::vector<std::int64_t>(static_cast<std::size_t>(window_) + 1, -1));
    next_of_.assign(3, std::vector<BlockIndex>(static_cast<std::size_t>(window_) + 1, 0));
    max_step_ = 1;
    for (int c = 0; c < params_.alpha; ++c) {
      const StrandClass cls = params_.classes()[static_cast<std::size_t>(c)];
      auto& strand = strand_of_[static_cast<std::size_t>(c)];
      auto& pos = pos_of_[static_cast<std::size_t>(c)];
      auto& next = next_of_[static_cast<std::size_t>(c)];
      for (BlockIndex i = 1; i <= window_; ++i) {
        next[static_cast<std::size_t>(i)] = output_parity_index(i, cls, params_);
        max_step_ = std::max<std::int64_t>(
            max_step_, next[static_cast<std::size_t>(i)] - i);
        if (pos[static_cast<std::size_t>(i)] >= 0) continue;
        // i starts the in-window portion of its strand; walk it forward.
        const int sid = strand_id_of(i, cls, params_);
        std::int64_t hop = 0;
        for (BlockIndex n = i; n <= window_;
             n = output_parity_index(n, cls, params_)) {
          strand[static_cast<std::size_t>(n)] = sid;
          pos[static_cast<std::size_t>(n)] = hop++;
        }
      }
    }
  }

  MeResult run() {
    result_ = MeResult{};
    for (int r0 = 1; r0 <= params_.s; ++r0) {
      BlockIndex base = margin_;
      while (base % params_.s != r0 % params_.s) ++base;
      if (base > window_) continue;
      nodes_[0] = base;
      extend(1, base);
      if (!result_.complete) break;
    }
    std::sort(result_.patterns.begin(), result_.patterns.end(),
              [](const ErasurePattern& a, const ErasurePattern& b) {
                if (a.size != b.size) return a.size < b.size;
                return a.blocks < b.blocks;
              });
    for (const ErasurePattern& p : result_.patterns) {
      if (!result_.min_size || p.size < *result_.min_size) result_.min_size = p.size;
    }
    return result_;
  }

 private:
  /// Admissible lower bound on the final pattern size given the k nodes
  /// placed so far (future nodes only appear at larger indices).
  std::int64_t lower_bound(int k) {
    std::int64_t lb = x_;
    for (int c = 0; c < params_.alpha; ++c) {
      groups_scratch_.clear();
      collect_groups(c, k, groups_scratch_);
      std::int64_t class_cost = 0;
      for (const GroupView& g : groups_scratch_) {
        if (g.count == 1) {
          class_cost += 1;  // must be joined by a future node, >= 1 hop
        } else {
          const std::span<const std::int64_t> w(g.gaps.data(),
                                                static_cast<std::size_t>(g.count - 1));
          class_cost += std::min(min_edge_cover(w), min_cover_except_last(w) + 1);
        }
      }
      // Every gap covers at most two nodes, so x nodes need >= ceil(x/2)
      // hops per class no matter how the rest is placed.
      class_cost = std::max<std::int64_t>(class_cost, (x_ + 1) / 2);
      lb += class_cost;
    }
    return lb;
  }

  void collect_groups(int c, int k, std::vector<GroupView>& out) {
    const auto& strand = strand_of_[static_cast<std::size_t>(c)];
    bool used[8] = {};
    for (int a = 0; a < k; ++a) {
      if (used[a]) continue;
      GroupView g;
      g.nodes[static_cast<std::size_t>(g.count++)] = nodes_[static_cast<std::size_t>(a)];
      const int sid = strand[static_cast<std::size_t>(nodes_[static_cast<std::size_t>(a)])];
      for (int b = a + 1; b < k; ++b) {
        if (used[b]) continue;
        if (strand[static_cast<std::size_t>(nodes_[static_cast<std::size_t>(b)])] == sid) {
          used[b] = true;
          g.nodes[static_cast<std::size_t>(g.count++)] = nodes_[static_cast<std::size_t>(b)];
        }
      }
      const auto& pos = pos_of_[static_cast<std::size_t>(c)];
      for (int t = 0; t + 1 < g.count; ++t) {
        g.gaps[static_cast<std::size_t>(t)] =
            pos[static_cast<std::size_t>(g.nodes[static_cast<std::size_t>(t) + 1])] -
            pos[static_cast<std::size_t>(g.nodes[static_cast<std::size_t>(t)])];
      }
      out.push_back(g);
    }
  }

  void extend(int k, BlockIndex last) {
    if (!result_.complete) return;
    if (k == x_) {
      evaluate();
      return;
    }
    // A wider gap than the whole remaining hop budget can span would split
    // the pattern into independent halves, which never verify as minimal.
    const BlockIndex reach =
        last + static_cast<BlockIndex>(max_size_ - x_) * max_step_;
    const BlockIndex stop = std::min<BlockIndex>(window_, reach);
    for (BlockIndex i = last + 1; i <= stop; ++i) {
      nodes_[static_cast<std::size_t>(k)] = i;
      if (++result_.node_sets_examined > budget_.max_node_sets) {
        result_.complete = false;
        return;
      }
      if (lower_bound(k + 1) <= max_size_) extend(k + 1, i);
      if (!result_.complete) return;
    }
  }

  void evaluate() {
    // Per class: all strand groups need >= 2 members, then pick a run cover.
    all_groups_.clear();
    group_class_.clear();
    for (int c = 0; c < params_.alpha; ++c) {
      const std::size_t begin = all_groups_.size();
      collect_groups(c, x_, all_groups_);
      for (std::size_t g = begin; g < all_groups_.size(); ++g) {
        if (all_groups_[g].count < 2) return;
        group_class_.push_back(c);
      }
    }
    group_covers_.assign(all_groups_.size(), {});
    std::int64_t min_total = x_;
    for (std::size_t g = 0; g < all_groups_.size(); ++g) {
      const GroupView& view = all_groups_[g];
      const int gaps = view.count - 1;
      std::int64_t best = kInf;
      for (unsigned mask = 1; mask < (1u << gaps); ++mask) {
        bool covers = true;
        for (int v = 0; v < view.count && covers; ++v) {
          const bool left = v > 0 && (mask >> (v - 1)) & 1u;
          const bool right = v < gaps && (mask >> v) & 1u;
          covers = left || right;
        }
        if (!covers) continue;
        std::int64_t cost = 0;
        for (int t = 0; t < gaps; ++t) {
          if ((mask >> t) & 1u) cost += view.gaps[static_cast<std::size_t>(t)];
        }
        if (cost + x_ > max_size_) continue;
        group_covers_[g].push_back({cost, mask});
        best = std::min(best, cost);
      }
      if (group_covers_[g].empty()) return;
      std::sort(group_covers_[g].begin(), group_covers_[g].end());
      min_total += best;
    }
    if (min_total > max_size_) return;
    pick_covers(0, 0);
  }

  void pick_covers(std::size_t g, std::int64_t cost_so_far) {
    if (!result_.complete) return;
    if (g == all_groups_.size()) {
      materialize_and_verify();
      return;
    }
    // Cheapest remaining covers for the tail groups.
    std::int64_t tail = 0;
    for (std::size_t t = g + 1; t < all_groups_.size(); ++t) {
      tail += group_covers_[t].front().first;
    }
    for (const auto& [cost, mask] : group_covers_[g]) {
      if (x_ + cost_so_far + cost + tail > max_size_) break;  // sorted by cost
      chosen_mask_[g] = mask;
      pick_covers(g + 1, cost_so_far + cost);
      if (!result_.complete) return;
    }
  }

  void materialize_and_verify() {
    if (++result_.candidates_verified > budget_.max_patterns) {
      result_.complete = false;
      return;
    }
    slots_.clear();
    for (int a = 0; a < x_; ++a) {
      slots_.push_back(nodes_[static_cast<std::size_t>(a)] - 1);
    }
    for (std::size_t g = 0; g < all_groups_.size(); ++g) {
      const GroupView& view = all_groups_[g];
      const int c = group_class_[g];
      const auto& next = next_of_[static_cast<std::size_t>(c)];
      for (int t = 0; t + 1 < view.count; ++t) {
        if (!((chosen_mask_[g] >> t) & 1u)) continue;
        for (BlockIndex n = view.nodes[static_cast<std::size_t>(t)];
             n < view.nodes[static_cast<std::size_t>(t) + 1];
             n = next[static_cast<std::size_t>(n)]) {
          slots_.push_back(window_ * (1 + c) + (n - 1));
        }
      }
    }

    // Stopping set by construction: the decoder must not repair anything.
    const auto full = decoder_.decode(slots_);
    if (full.repaired != 0) return;
    // Irreducible: dropping any one member makes everything recoverable.
    scratch_.resize(slots_.size() - 1);
    for (std::size_t drop = 0; drop < slots_.size(); ++drop) {
      std::size_t w = 0;
      for (std::size_t k = 0; k < slots_.size(); ++k) {
        if (k != drop) scratch_[w++] = slots_[k];
      }
      if (decoder_.decode(scratch_).unrecovered_nodes != 0) return;
    }

    ErasurePattern pattern;
    pattern.data_loss = x_;
    pattern.size = static_cast<int>(slots_.size());
    for (const std::int64_t slot : slots_) pattern.blocks.push_back(decoder_.id_of(slot));
    std::sort(pattern.blocks.begin(), pattern.blocks.end());
    result_.patterns.push_back(std::move(pattern));
  }

  CodeParams params_;
  BlockIndex window_;
  int max_size_;
  int x_;
  MeBudget budget_;
  WindowDecoder decoder_;
  BlockIndex margin_ = 1;
  std::int64_t max_step_ = 1;

  std::vector<std::vector<int>> strand_of_;
  std::vector<std::vector<std::int64_t>> pos_of_;
  std::vector<std::vector<BlockIndex>> next_of_;

  std::array<BlockIndex, 8> nodes_{};
  std::vector<GroupView> groups_scratch_;
  std::vector<GroupView> all_groups_;
  std::vector<int> group_class_;
  std::vector<std::vector<std::pair<std::int64_t, unsigned>>> group_covers_;
  std::array<unsigned, 24> chosen_mask_{};
  std::vector<std::int64_t> slots_;
  std::vector<std::int64_t> scratch_;
  MeResult result_;
};

}  // namespace

MeResult enumerate_me(const CodeParams& params, BlockIndex window_nodes,
                      int max_size, int x, const MeBudget& budget) {
  if (x > 8) throw std::invalid_argument("x > 8 is outside the search budget");
  MeSearch search(params, window_nodes, max_size, x, budget);
  return search.run();
}

MinMeResult min_me_size(const CodeParams& params, int x, BlockIndex window_nodes,
                        int max_size, const MeBudget& budget) {
  const MeResult all = enumerate_me(params, window_nodes, max_size, x, budget);
  MinMeResult out;
  out.complete = all.complete;
  out.min_size = all.min_size;
  if (!all.min_size) return out;
  for (const ErasurePattern& p : all.patterns) {
    if (p.size == *all.min_size) {
      ++out.pattern_count;
      if (out.example.empty()) out.example = p.blocks;
    }
  }
  return out;
}

void write_me_csv(std::ostream& out, std::span<const MeCsvRow> rows) {
  out << "params,x,min_size,pattern_count,example_pattern,complete_flag\n";
  for (const MeCsvRow& row : rows) {
    out << '"' << row.params.label() << "\"," << row.x << ',';
    if (row.result.min_size) out << *row.result.min_size;
    out << ',' << row.result.pattern_count << ',';
    for (std::size_t k = 0; k < row.result.example.size(); ++k) {
      if (k > 0) out << ' ';
      out << canonical_id(row.result.example[k], row.params);
    }
    out << ',' << (row.result.complete ? 1 : 0) << '\n';
  }
}

}  // namespace aec
