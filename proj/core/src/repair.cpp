#include "aec/repair.hpp"

#include <unordered_set>

#include "aec/lattice.hpp"

namespace aec {

std::optional<RepairResult> repair_node(BlockIndex i, const BlockStore& store,
                                        const CodeParams& params) {
  for (const IncidentTuple& t : incident_tuples(i, params)) {
    const BlockRecord* out = store.find(t.output);
    if (out == nullptr || !out->available) continue;
    if (t.head()) {
      // p_{i,j} = d_i xor 0 at the strand head, so the edge alone suffices.
      return RepairResult{out->payload, t.cls, 1};
    }
    const BlockRecord* in = store.find(*t.input);
    if (in == nullptr || !in->available) continue;
    return RepairResult{xor_of(in->payload, out->payload), t.cls, 2};
  }
  return std::nullopt;
}

std::optional<RepairResult> repair_edge(const BlockId& edge, const BlockStore& store,
                                        const CodeParams& params) {
  // Left tuple: d_i with the parity feeding d_i on this strand.
  const BlockRecord* di = store.find(BlockId::node(edge.i));
  if (di != nullptr && di->available) {
    if (const auto h = input_parity_index(edge.i, edge.cls, params)) {
      const BlockRecord* in = store.find(BlockId::edge(edge.cls, *h, edge.i));
      if (in != nullptr && in->available) {
        return RepairResult{xor_of(di->payload, in->payload), edge.cls, 2};
      }
    } else {
      return RepairResult{di->payload, edge.cls, 1};  // head parity equals d_i
    }
  }
  // Right tuple: d_j with the parity d_j created on this strand.
  const BlockRecord* dj = store.find(BlockId::node(edge.j));
  if (dj != nullptr && dj->available) {
    const BlockRecord* out = store.find(make_output_edge(edge.j, edge.cls, params));
    if (out != nullptr && out->available) {
      return RepairResult{xor_of(dj->payload, out->payload), edge.cls, 2};
    }
  }
  return std::nullopt;
}

namespace {

/// Edges whose repair could still unblock a missing data block, transitively:
/// tuple edges of missing nodes, plus missing edges feeding the repair of an
/// edge already in the set.
std::unordered_set<BlockId, BlockIdHash> needed_parities(
    const std::vector<BlockId>& missing, const BlockStore& store,
    const CodeParams& params) {
  std::unordered_set<BlockId, BlockIdHash> needed;
  std::vector<BlockId> queue;

  const auto add = [&](const BlockId& edge) {
    const BlockRecord* rec = store.find(edge);
    if (rec == nullptr || rec->available) return;
    if (needed.insert(edge).second) queue.push_back(edge);
  };

  for (const BlockId& id : missing) {
    if (!id.is_node()) continue;
    for (const IncidentTuple& t : incident_tuples(id.i, params)) {
      if (t.input) add(*t.input);
      add(t.output);
    }
  }
  while (!queue.empty()) {
    const BlockId edge = queue.back();
    queue.pop_back();
    if (const auto h = input_parity_index(edge.i, edge.cls, params)) {
      add(BlockId::edge(edge.cls, *h, edge.i));
    }
    if (store.contains(BlockId::node(edge.j))) {
      add(make_output_edge(edge.j, edge.cls, params));
    }
  }
  return needed;
}

}  // namespace

std::int64_t RepairReport::total_repaired() const {
  std::int64_t n = 0;
  for (const RoundStats& r : rounds) n += r.repaired_blocks;
  return n;
}

std::int64_t RepairReport::total_data_repaired() const {
  std::int64_t n = 0;
  for (const RoundStats& r : rounds) n += r.repaired_data;
  return n;
}

int RepairReport::rounds_to_data_fixpoint() const {
  int last = 0;
  for (std::size_t k = 0; k < rounds.size(); ++k) {
    if (rounds[k].repaired_data > 0) last = static_cast<int>(k) + 1;
  }
  return last;
}

RepairReport repair_all(BlockStore& store, const CodeParams& params,
                        RepairMode mode, int max_rounds) {
  RepairReport report;
  std::vector<BlockId> missing = store.missing_ids();

  for (int round = 0; round < max_rounds; ++round) {
    std::unordered_set<BlockId, BlockIdHash> needed;
    if (mode == RepairMode::MinimalMaintenance) {
      needed = needed_parities(missing, store, params);
    }

    // The store is not mutated until the end of the round, so every attempt
    // sees the start-of-round availability.
    std::vector<std::pair<BlockId, RepairResult>> repairs;
    for (const BlockId& id : missing) {
      if (id.is_node()) {
        if (auto r = repair_node(id.i, store, params)) {
          repairs.emplace_back(id, std::move(*r));
        }
      } else {
        if (mode == RepairMode::MinimalMaintenance && !needed.contains(id)) continue;
        if (auto r = repair_edge(id, store, params)) {
          repairs.emplace_back(id, std::move(*r));
        }
      }
    }

    RoundStats stats;
    for (auto& [id, result] : repairs) {
      store.mark_repaired(id, std::move(result.payload));
      ++stats.repaired_blocks;
      if (id.is_node()) ++stats.repaired_data;
      stats.reads += result.reads;
    }
    report.rounds.push_back(stats);
    if (stats.repaired_blocks == 0) break;

    std::erase_if(missing, [&](const BlockId& id) { return store.available(id); });
  }

  for (const BlockId& id : store.missing_ids()) {
    ++report.unrecovered_blocks;
    if (id.is_node()) ++report.unrecovered_data;
  }
  return report;
}

}  // namespace aec
