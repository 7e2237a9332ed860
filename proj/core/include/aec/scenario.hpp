#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aec/baselines.hpp"
#include "aec/params.hpp"
#include "aec/placement.hpp"
#include "aec/repair.hpp"

namespace aec {

/// One redundancy scheme under comparison: an entanglement lattice, RS
/// stripes, or n-way replication.
struct SchemeSpec {
  enum class Kind { Ae, Rs, Replication };

  Kind kind = Kind::Ae;
  CodeParams ae{};     // Kind::Ae
  int k = 0, m = 0;    // Kind::Rs
  int replicas = 0;    // Kind::Replication

  static SchemeSpec make_ae(const CodeParams& params);
  static SchemeSpec make_rs(int k, int m);
  static SchemeSpec make_replication(int n);

  /// Accepts "ae(3,2,5)", "ae(1)", "rs(10,4)", "rep(3)", "replication(3)".
  static std::optional<SchemeSpec> parse(std::string_view text);

  std::string label() const;
  double additional_storage_percent() const;
};

struct ScenarioConfig {
  SchemeSpec scheme;
  std::int64_t num_data_blocks = 100'000;
  std::uint32_t n_locations = 100;
  double fraction = 0.10;
  std::uint64_t seed = 1;
  RepairMode maintenance = RepairMode::FullMaintenance;
  int max_rounds = 100;
};

struct ScenarioMetrics {
  std::int64_t initially_unavailable_data = 0;
  std::int64_t repaired_data = 0;
  std::int64_t data_loss = 0;
  std::int64_t vulnerable_data = 0;
  double single_failure_fraction = 0.0;
  std::vector<std::int64_t> round_repairs;       // all blocks, per round
  std::vector<std::int64_t> round_data_repairs;  // data blocks, per round
  /// 1-based index of the last round that repaired a data block; 0 if none.
  int rounds = 0;
  std::map<int, std::int64_t> reads_histogram;
  double wall_time_ms = 0.0;
};

/// Builds the scheme layout, places every block at a random location,
/// injects the disaster and runs the scheme's repair engine. Deterministic
/// per (scheme, params, n, fraction, seed).
ScenarioMetrics run_scenario(const ScenarioConfig& config);

struct SweepRow {
  ScenarioConfig config;
  ScenarioMetrics metrics;
};

/// Cross product of schemes x fractions x seeds, run on up to `jobs`
/// threads. Row order is deterministic regardless of scheduling.
std::vector<SweepRow> sweep(const std::vector<SchemeSpec>& schemes,
                            std::int64_t num_data_blocks, std::uint32_t n_locations,
                            const std::vector<double>& fractions,
                            const std::vector<std::uint64_t>& seeds,
                            RepairMode maintenance, int jobs = 1);

/// CSV with fixed columns: scheme,alpha,s,p,k,m,n_locations,fraction,seed,
/// data_loss,vulnerable,sf_fraction,rounds,wall_time_ms. Header included.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Stripes grouped by how many distinct locations their blocks landed on
/// (index = distinct-location count). Padded slots are skipped.
std::vector<std::int64_t> stripe_spread_histogram(const RsLayout& layout,
                                                  const Placement& placement);

/// Number of real (placed) blocks of a scheme at a given data-block count.
std::int64_t total_blocks(const SchemeSpec& scheme, std::int64_t num_data_blocks);

}  // namespace aec
