#include "aec/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "aec/lattice.hpp"

namespace aec {

SchemeSpec SchemeSpec::make_ae(const CodeParams& params) {
  SchemeSpec s;
  s.kind = Kind::Ae;
  s.ae = params;
  return s;
}

SchemeSpec SchemeSpec::make_rs(int k, int m) {
  if (k <= 0 || m < 0) throw std::invalid_argument("bad rs(k,m)");
  SchemeSpec s;
  s.kind = Kind::Rs;
  s.k = k;
  s.m = m;
  return s;
}

SchemeSpec SchemeSpec::make_replication(int n) {
  if (n < 1) throw std::invalid_argument("replication needs n >= 1");
  SchemeSpec s;
  s.kind = Kind::Replication;
  s.replicas = n;
  return s;
}

namespace {

std::optional<std::vector<int>> parse_int_list(std::string_view text) {
  std::vector<int> values;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    if (item == "-") {
      values.push_back(0);
    } else {
      int v = 0;
      const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      if (ec != std::errc() || ptr != item.data() + item.size()) return std::nullopt;
      values.push_back(v);
    }
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return values;
}

}  // namespace

std::optional<SchemeSpec> SchemeSpec::parse(std::string_view text) {
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') return std::nullopt;
  const std::string_view name = text.substr(0, open);
  const auto args = parse_int_list(text.substr(open + 1, text.size() - open - 2));
  if (!args) return std::nullopt;
  try {
    if (name == "ae") {
      if (args->size() == 1 && (*args)[0] == 1) {
        return make_ae(CodeParams::validate(1, 1, 0));
      }
      if (args->size() == 3) {
        if ((*args)[0] == 1) return make_ae(CodeParams::validate(1, 1, 0));
        return make_ae(CodeParams::validate((*args)[0], (*args)[1], (*args)[2]));
      }
      return std::nullopt;
    }
    if (name == "rs" && args->size() == 2) return make_rs((*args)[0], (*args)[1]);
    if ((name == "rep" || name == "replication") && args->size() == 1) {
      return make_replication((*args)[0]);
    }
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  return std::nullopt;
}

std::string SchemeSpec::label() const {
  switch (kind) {
    case Kind::Ae: return ae.label();
    case Kind::Rs: return "rs(" + std::to_string(k) + "," + std::to_string(m) + ")";
    case Kind::Replication: return "rep(" + std::to_string(replicas) + ")";
  }
  return "?";
}

double SchemeSpec::additional_storage_percent() const {
  switch (kind) {
    case Kind::Ae: return ae_additional_storage_percent(ae.alpha);
    case Kind::Rs: return rs_additional_storage_percent(k, m);
    case Kind::Replication: return replication_additional_storage_percent(replicas);
  }
  return 0.0;
}

std::int64_t total_blocks(const SchemeSpec& scheme, std::int64_t num_data_blocks) {
  switch (scheme.kind) {
    case SchemeSpec::Kind::Ae:
      return num_data_blocks * (1 + scheme.ae.alpha);
    case SchemeSpec::Kind::Rs: {
      const RsLayout layout = rs_layout(num_data_blocks, scheme.k, scheme.m);
      return num_data_blocks + layout.num_stripes * layout.m;
    }
    case SchemeSpec::Kind::Replication:
      return num_data_blocks * scheme.replicas;
  }
  return 0;
}

namespace {

// ---------------------------------------------------------------------------
// Dense lattice world for disaster simulation. Blocks are addressed by slot:
// node i -> i-1; edge of the c-th class created by node i -> N*(1+c) + i-1.
// Availability-only (metrics do not depend on payload bytes); the tuple
// arithmetic matches repair_node / repair_edge over a BlockStore, which the
// tests cross-check.
// ---------------------------------------------------------------------------
class AeWorld {
 public:
  AeWorld(const CodeParams& params, std::int64_t num_nodes)
      : params_(params),
        n_(num_nodes),
        alpha_(params.alpha),
        avail_(total_slots(), 1),
        in_off_(static_cast<std::size_t>(3 * params.s), 0),
        out_off_(static_cast<std::size_t>(3 * params.s), 0) {
    // Input/output index offsets are periodic in i mod s; tabulate them from
    // the rule functions at a representative node deep in the lattice.
    const BlockIndex base =
        2 * static_cast<BlockIndex>(params_.s) * std::max(params_.p, 1) + params_.s;
    for (int r = 0; r < params_.s; ++r) {
      BlockIndex i0 = base + r + 1;  // i0 mod s == (r + 1) mod s
      for (int c = 0; c < alpha_; ++c) {
        const StrandClass cls = params_.classes()[static_cast<std::size_t>(c)];
        const std::size_t slot = static_cast<std::size_t>(c * params_.s + (i0 % params_.s));
        in_off_[slot] = i0 - input_parity_index_raw(i0, cls, params_);
        out_off_[slot] = output_parity_index(i0, cls, params_) - i0;
      }
    }
  }

  std::int64_t total_slots() const { return n_ * (1 + alpha_); }
  std::int64_t num_nodes() const { return n_; }

  std::int64_t node_slot(BlockIndex i) const { return i - 1; }
  std::int64_t edge_slot(int c, BlockIndex i) const { return n_ * (1 + c) + (i - 1); }

  BlockIndex input_index(int c, BlockIndex i) const {
    return i - in_off_[static_cast<std::size_t>(c * params_.s + (i % params_.s))];
  }
  BlockIndex output_index(int c, BlockIndex i) const {
    return i + out_off_[static_cast<std::size_t>(c * params_.s + (i % params_.s))];
  }

  void set_available(std::int64_t slot, bool value) { avail_[static_cast<std::size_t>(slot)] = value; }
  bool available(std::int64_t slot) const { return avail_[static_cast<std::size_t>(slot)] != 0; }

  struct Attempt {
    bool ok = false;
    int reads = 0;
  };

  /// Repair check for a node against an availability snapshot.
  Attempt try_node(BlockIndex i, const std::vector<std::uint8_t>& snap) const {
    for (int c = 0; c < alpha_; ++c) {
      if (!snap[static_cast<std::size_t>(edge_slot(c, i))]) continue;
      const BlockIndex h = input_index(c, i);
      if (h < 1) return {true, 1};  // head tuple: the out edge equals d_i
      if (snap[static_cast<std::size_t>(edge_slot(c, h))]) return {true, 2};
    }
    return {false, 0};
  }

  /// Repair check for the c-th class edge created by node i.
  Attempt try_edge(int c, BlockIndex i, const std::vector<std::uint8_t>& snap) const {
    if (snap[static_cast<std::size_t>(node_slot(i))]) {
      const BlockIndex h = input_index(c, i);
      if (h < 1) return {true, 1};
      if (snap[static_cast<std::size_t>(edge_slot(c, h))]) return {true, 2};
    }
    const BlockIndex j = output_index(c, i);
    if (j <= n_ && snap[static_cast<std::size_t>(node_slot(j))] &&
        snap[static_cast<std::size_t>(edge_slot(c, j))]) {
      return {true, 2};
    }
    return {false, 0};
  }

  const CodeParams& params() const { return params_; }
  int alpha() const { return alpha_; }
  const std::vector<std::uint8_t>& availability() const { return avail_; }

 private:
  CodeParams params_;
  std::int64_t n_;
  int alpha_;
  std::vector<std::uint8_t> avail_;
  std::vector<BlockIndex> in_off_;
  std::vector<BlockIndex> out_off_;
};

/// Missing edges that could still (transitively) unblock a missing data
/// block: the tuple edges of missing nodes plus, recursively, the missing
/// edges whose repair those depend on.
std::vector<std::uint8_t> needed_edges(const AeWorld& world,
                                       const std::vector<std::int64_t>& missing) {
  std::vector<std::uint8_t> needed(static_cast<std::size_t>(world.total_slots()), 0);
  std::vector<std::pair<int, BlockIndex>> stack;

  const auto add = [&](int c, BlockIndex i) {
    const std::int64_t slot = world.edge_slot(c, i);
    if (world.available(slot) || needed[static_cast<std::size_t>(slot)]) return;
    needed[static_cast<std::size_t>(slot)] = 1;
    stack.emplace_back(c, i);
  };

  const std::int64_t n = world.num_nodes();
  for (const std::int64_t slot : missing) {
    if (slot >= n) continue;  // nodes only
    const BlockIndex i = slot + 1;
    for (int c = 0; c < world.alpha(); ++c) {
      const BlockIndex h = world.input_index(c, i);
      if (h >= 1) add(c, h);
      add(c, i);
    }
  }
  while (!stack.empty()) {
    const auto [c, i] = stack.back();
    stack.pop_back();
    const BlockIndex h = world.input_index(c, i);
    if (h >= 1) add(c, h);
    const BlockIndex j = world.output_index(c, i);
    if (j <= n) add(c, j);
  }
  return needed;
}

SchemeOutcome run_ae_world(AeWorld& world, RepairMode mode, int max_rounds) {
  SchemeOutcome out;
  const std::int64_t n = world.num_nodes();

  std::vector<std::int64_t> missing;
  for (std::int64_t slot = 0; slot < world.total_slots(); ++slot) {
    if (!world.available(slot)) {
      missing.push_back(slot);
      if (slot < n) ++out.initially_unavailable_data;
    }
  }

  std::vector<std::uint8_t> snapshot;
  std::vector<std::int64_t> repaired_slots;
  std::vector<int> repaired_reads;
  for (int round = 0; round < max_rounds; ++round) {
    snapshot = world.availability();
    std::vector<std::uint8_t> needed;
    if (mode == RepairMode::MinimalMaintenance) {
      needed = needed_edges(world, missing);
    }

    repaired_slots.clear();
    repaired_reads.clear();
    std::int64_t data_repaired = 0;
    for (const std::int64_t slot : missing) {
      AeWorld::Attempt attempt;
      if (slot < n) {
        attempt = world.try_node(slot + 1, snapshot);
      } else {
        if (mode == RepairMode::MinimalMaintenance && !needed[static_cast<std::size_t>(slot)]) {
          continue;
        }
        const int c = static_cast<int>(slot / n) - 1;
        const BlockIndex i = slot % n + 1;
        attempt = world.try_edge(c, i, snapshot);
      }
      if (attempt.ok) {
        repaired_slots.push_back(slot);
        repaired_reads.push_back(attempt.reads);
      }
    }

    for (std::size_t k = 0; k < repaired_slots.size(); ++k) {
      world.set_available(repaired_slots[k], true);
      out.reads_histogram[repaired_reads[k]] += 1;
      if (repaired_slots[k] < n) ++data_repaired;
    }
    out.round_repairs.push_back(static_cast<std::int64_t>(repaired_slots.size()));
    out.round_data_repairs.push_back(data_repaired);
    out.repaired_data += data_repaired;
    out.repaired_blocks_total += static_cast<std::int64_t>(repaired_slots.size());
    if (repaired_slots.empty()) break;

    std::erase_if(missing, [&](std::int64_t slot) { return world.available(slot); });
  }

  out.lost_data = out.initially_unavailable_data - out.repaired_data;
  out.single_failure_repairs =
      out.round_data_repairs.empty() ? 0 : out.round_data_repairs.front();

  // Vulnerable: available data blocks with no live incident parity left.
  for (BlockIndex i = 1; i <= n; ++i) {
    if (!world.available(world.node_slot(i))) continue;
    bool protected_ = false;
    for (int c = 0; c < world.alpha() && !protected_; ++c) {
      if (world.available(world.edge_slot(c, i))) protected_ = true;
      const BlockIndex h = world.input_index(c, i);
      if (h >= 1 && world.available(world.edge_slot(c, h))) protected_ = true;
    }
    if (!protected_) ++out.vulnerable_data;
  }
  return out;
}

ScenarioMetrics to_metrics(const SchemeOutcome& outcome) {
  ScenarioMetrics m;
  m.initially_unavailable_data = outcome.initially_unavailable_data;
  m.repaired_data = outcome.repaired_data;
  m.data_loss = outcome.lost_data;
  m.vulnerable_data = outcome.vulnerable_data;
  m.single_failure_fraction = outcome.single_failure_fraction();
  m.round_repairs = outcome.round_repairs;
  m.round_data_repairs = outcome.round_data_repairs;
  m.reads_histogram = outcome.reads_histogram;
  for (std::size_t k = 0; k < outcome.round_data_repairs.size(); ++k) {
    if (outcome.round_data_repairs[k] > 0) m.rounds = static_cast<int>(k) + 1;
  }
  return m;
}

}  // namespace

ScenarioMetrics run_scenario(const ScenarioConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::int64_t blocks = total_blocks(config.scheme, config.num_data_blocks);
  const Placement placement = place(static_cast<std::size_t>(blocks),
                                    config.n_locations, config.seed);
  const std::vector<bool> down =
      sample_disaster(config.n_locations, config.fraction, config.seed);
  const auto block_up = [&](std::int64_t real_index) {
    return !down[placement.location[static_cast<std::size_t>(real_index)]];
  };

  SchemeOutcome outcome;
  switch (config.scheme.kind) {
    case SchemeSpec::Kind::Ae: {
      AeWorld world(config.scheme.ae, config.num_data_blocks);
      for (std::int64_t slot = 0; slot < world.total_slots(); ++slot) {
        world.set_available(slot, block_up(slot));
      }
      outcome = run_ae_world(world, config.maintenance, config.max_rounds);
      break;
    }
    case SchemeSpec::Kind::Rs: {
      const RsLayout layout =
          rs_layout(config.num_data_blocks, config.scheme.k, config.scheme.m);
      std::vector<bool> avail(static_cast<std::size_t>(layout.total_slots()), true);
      std::int64_t real = 0;
      for (std::int64_t slot = 0; slot < layout.total_slots(); ++slot) {
        if (layout.is_real(slot)) avail[static_cast<std::size_t>(slot)] = block_up(real++);
      }
      outcome = rs_repair(layout, avail, config.maintenance);
      break;
    }
    case SchemeSpec::Kind::Replication: {
      const ReplicationLayout layout =
          replication_layout(config.num_data_blocks, config.scheme.replicas);
      std::vector<bool> avail(static_cast<std::size_t>(layout.total_slots()));
      for (std::int64_t slot = 0; slot < layout.total_slots(); ++slot) {
        avail[static_cast<std::size_t>(slot)] = block_up(slot);
      }
      outcome = replication_repair(layout, avail, config.maintenance);
      break;
    }
  }

  ScenarioMetrics metrics = to_metrics(outcome);
  const auto t1 = std::chrono::steady_clock::now();
  metrics.wall_time_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();
  return metrics;
}

std::vector<SweepRow> sweep(const std::vector<SchemeSpec>& schemes,
                            std::int64_t num_data_blocks, std::uint32_t n_locations,
                            const std::vector<double>& fractions,
                            const std::vector<std::uint64_t>& seeds,
                            RepairMode maintenance, int jobs) {
  std::vector<SweepRow> rows;
  for (const SchemeSpec& scheme : schemes) {
    for (const double fraction : fractions) {
      for (const std::uint64_t seed : seeds) {
        SweepRow row;
        row.config = ScenarioConfig{scheme,   num_data_blocks, n_locations,
                                    fraction, seed,            maintenance};
        rows.push_back(row);
      }
    }
  }

  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(rows.size())));
  if (workers == 1) {
    for (SweepRow& row : rows) row.metrics = run_scenario(row.config);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t idx = next.fetch_add(1);
        if (idx >= rows.size()) return;
        rows[idx].metrics = run_scenario(rows[idx].config);
      }
    });
  }
  for (std::thread& t : pool) t.join();
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "scheme,alpha,s,p,k,m,n_locations,fraction,seed,data_loss,vulnerable,"
         "sf_fraction,rounds,wall_time_ms\n";
  char buf[64];
  for (const SweepRow& row : rows) {
    const SchemeSpec& scheme = row.config.scheme;
    out << scheme.label() << ',';
    if (scheme.kind == SchemeSpec::Kind::Ae) {
      out << scheme.ae.alpha << ',' << scheme.ae.s << ',' << scheme.ae.p << ",,,";
    } else if (scheme.kind == SchemeSpec::Kind::Rs) {
      out << ",,," << scheme.k << ',' << scheme.m << ',';
    } else {
      out << ",,,,,";
    }
    std::snprintf(buf, sizeof(buf), "%.2f", row.config.fraction);
    out << row.config.n_locations << ',' << buf << ',' << row.config.seed << ','
        << row.metrics.data_loss << ',' << row.metrics.vulnerable_data << ',';
    std::snprintf(buf, sizeof(buf), "%.6f", row.metrics.single_failure_fraction);
    out << buf << ',' << row.metrics.rounds << ',';
    std::snprintf(buf, sizeof(buf), "%.3f", row.metrics.wall_time_ms);
    out << buf << '\n';
  }
}

std::vector<std::int64_t> stripe_spread_histogram(const RsLayout& layout,
                                                  const Placement& placement) {
  std::vector<std::int64_t> histogram(static_cast<std::size_t>(layout.stripe_size()) + 1, 0);
  std::vector<std::uint32_t> locs;
  std::int64_t real = 0;
  for (std::int64_t t = 0; t < layout.num_stripes; ++t) {
    locs.clear();
    for (std::int64_t r = 0; r < layout.stripe_size(); ++r) {
      const std::int64_t slot = t * layout.stripe_size() + r;
      if (!layout.is_real(slot)) continue;
      locs.push_back(placement.location[static_cast<std::size_t>(real++)]);
    }
    std::sort(locs.begin(), locs.end());
    const auto distinct = std::unique(locs.begin(), locs.end()) - locs.begin();
    ++histogram[static_cast<std::size_t>(distinct)];
  }
  return histogram;
}

}  // namespace aec
