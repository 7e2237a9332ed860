#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "aec/repair.hpp"

namespace aec {

/// RS(k,m) stripes modelled at availability level: a stripe is repairable
/// iff at least k of its k+m blocks are available. No field arithmetic; the
/// disaster metrics are purely combinatorial over availability.
///
/// Blocks are addressed by slot: stripe t occupies slots
/// [t*(k+m), (t+1)*(k+m)), data first. When num_data is not divisible by k
/// the last stripe is padded with virtual data blocks that are pinned
/// available and excluded from every metric.
struct RsLayout {
  std::int64_t num_data = 0;
  int k = 0;
  int m = 0;
  std::int64_t num_stripes = 0;
  std::int64_t pad_blocks = 0;

  std::int64_t stripe_size() const { return k + m; }
  std::int64_t total_slots() const { return num_stripes * stripe_size(); }

  /// Is a slot a real block (false for padded data slots)?
  bool is_real(std::int64_t slot) const;
  bool is_data(std::int64_t slot) const { return slot % stripe_size() < k; }
  /// Padded data slots in stripe t (only the last stripe can have any).
  std::int64_t pad_in_stripe(std::int64_t t) const {
    return t == num_stripes - 1 ? pad_blocks : 0;
  }
};

RsLayout rs_layout(std::int64_t num_data, int k, int m);

struct ReplicationLayout {
  std::int64_t num_data = 0;
  int n_replicas = 0;

  std::int64_t total_slots() const { return num_data * n_replicas; }
};

ReplicationLayout replication_layout(std::int64_t num_data, int n_replicas);

/// Metric bundle shared by all schemes for one disaster.
struct SchemeOutcome {
  std::int64_t initially_unavailable_data = 0;
  std::int64_t repaired_data = 0;
  std::int64_t lost_data = 0;
  std::int64_t vulnerable_data = 0;
  /// Repaired data blocks whose repair was a single failure (for stripes:
  /// the only unavailable block of the stripe; for replica groups: exactly
  /// one copy missing; for lattices: repaired in the first round).
  std::int64_t single_failure_repairs = 0;
  std::int64_t repaired_blocks_total = 0;
  std::vector<std::int64_t> round_repairs;       // all blocks, per round
  std::vector<std::int64_t> round_data_repairs;  // data blocks, per round
  std::map<int, std::int64_t> reads_histogram;   // reads per repair -> count

  double single_failure_fraction() const {
    return repaired_data == 0 ? 0.0
                              : static_cast<double>(single_failure_repairs) /
                                    static_cast<double>(repaired_data);
  }
};

/// Stripe-by-stripe repair. A stripe with >m unavailable blocks is damaged:
/// its unavailable data blocks count as lost, its available data blocks stay
/// readable but unprotected. Repairable stripes recover each unavailable
/// data block at k reads. Under minimal maintenance only stripes containing
/// an unavailable data block are restored (parities included); stripes that
/// lost just parities keep the degraded redundancy, and their data counts as
/// vulnerable once fewer than k+1 blocks remain.
SchemeOutcome rs_repair(const RsLayout& layout, const std::vector<bool>& available,
                        RepairMode mode);

/// A data block is lost iff all n replicas are unavailable. Under minimal
/// maintenance a repair restores access to the data but persists no new
/// copy, so a group is vulnerable when exactly one live replica remains;
/// full maintenance re-replicates every group back to n copies.
SchemeOutcome replication_repair(const ReplicationLayout& layout,
                                 const std::vector<bool>& available,
                                 RepairMode mode);

/// Additional storage of Table III: (m/k)*100 for RS, alpha*100 for AE,
/// (n-1)*100 for replication.
double rs_additional_storage_percent(int k, int m);
double ae_additional_storage_percent(int alpha);
double replication_additional_storage_percent(int n_replicas);

}  // namespace aec
