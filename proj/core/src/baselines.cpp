#include "aec/baselines.hpp"

#include <stdexcept>

namespace aec {

bool RsLayout::is_real(std::int64_t slot) const {
  if (slot % stripe_size() >= k) return true;  // parity
  const std::int64_t data_index = slot / stripe_size() * k + slot % stripe_size();
  return data_index < num_data;
}

RsLayout rs_layout(std::int64_t num_data, int k, int m) {
  if (k <= 0) throw std::invalid_argument("rs_layout: k must be positive");
  if (m < 0) throw std::invalid_argument("rs_layout: m must be non-negative");
  if (num_data < 0) throw std::invalid_argument("rs_layout: negative block count");
  RsLayout layout;
  layout.num_data = num_data;
  layout.k = k;
  layout.m = m;
  layout.num_stripes = (num_data + k - 1) / k;
  layout.pad_blocks = layout.num_stripes * k - num_data;
  return layout;
}

ReplicationLayout replication_layout(std::int64_t num_data, int n_replicas) {
  if (n_replicas < 1) throw std::invalid_argument("replication needs n >= 1");
  if (num_data < 0) throw std::invalid_argument("negative block count");
  return ReplicationLayout{num_data, n_replicas};
}

SchemeOutcome rs_repair(const RsLayout& layout, const std::vector<bool>& available,
                        RepairMode mode) {
  if (static_cast<std::int64_t>(available.size()) != layout.total_slots()) {
    throw std::invalid_argument("availability vector does not match layout");
  }
  SchemeOutcome out;
  const std::int64_t width = layout.stripe_size();

  for (std::int64_t t = 0; t < layout.num_stripes; ++t) {
    const std::int64_t base = t * width;
    int avail = 0, data_missing = 0, parity_missing = 0;
    for (std::int64_t r = 0; r < width; ++r) {
      const std::int64_t slot = base + r;
      if (!layout.is_real(slot) || available[slot]) {
        ++avail;
      } else if (r < layout.k) {
        ++data_missing;
      } else {
        ++parity_missing;
      }
    }
    const int missing = data_missing + parity_missing;
    out.initially_unavailable_data += data_missing;

    if (avail >= layout.k) {
      // Repairable. Minimal maintenance touches the stripe only when a data
      // block is unavailable, but then restores it whole.
      const bool restore =
          mode == RepairMode::FullMaintenance ? missing > 0 : data_missing > 0;
      if (restore) {
        out.repaired_data += data_missing;
        out.repaired_blocks_total += missing;
        out.reads_histogram[layout.k] += missing;
        if (missing == 1 && data_missing == 1) ++out.single_failure_repairs;
      }
      const int avail_after = restore ? static_cast<int>(width) : avail;
      if (avail_after <= layout.k) {
        // No redundancy margin left: every remaining data block would be
        // unrecoverable if it failed next.
        out.vulnerable_data +=
            layout.k - data_missing - static_cast<int>(layout.pad_in_stripe(t));
      }
    } else {
      out.lost_data += data_missing;
      // Readable data in a dead stripe has no protection at all.
      out.vulnerable_data +=
          layout.k - data_missing - static_cast<int>(layout.pad_in_stripe(t));
    }
  }
  out.round_repairs.push_back(out.repaired_blocks_total);
  out.round_data_repairs.push_back(out.repaired_data);
  return out;
}

SchemeOutcome replication_repair(const ReplicationLayout& layout,
                                 const std::vector<bool>& available,
                                 RepairMode mode) {
  if (static_cast<std::int64_t>(available.size()) != layout.total_slots()) {
    throw std::invalid_argument("availability vector does not match layout");
  }
  SchemeOutcome out;
  const int n = layout.n_replicas;
  for (std::int64_t g = 0; g < layout.num_data; ++g) {
    const std::int64_t base = g * n;
    int live = 0;
    for (int r = 0; r < n; ++r) live += available[base + r] ? 1 : 0;
    const bool primary_down = !available[base];
    if (primary_down) ++out.initially_unavailable_data;

    if (live == 0) {
      ++out.lost_data;
      continue;
    }
    if (primary_down) {
      ++out.repaired_data;
      ++out.repaired_blocks_total;
      out.reads_histogram[1] += 1;
      if (live == n - 1) ++out.single_failure_repairs;
    }
    const int live_after = mode == RepairMode::FullMaintenance ? n : live;
    if (live_after == 1) ++out.vulnerable_data;
  }
  out.round_repairs.push_back(out.repaired_blocks_total);
  out.round_data_repairs.push_back(out.repaired_data);
  return out;
}

double rs_additional_storage_percent(int k, int m) {
  return 100.0 * m / k;
}

double ae_additional_storage_percent(int alpha) {
  return 100.0 * alpha;
}

double replication_additional_storage_percent(int n_replicas) {
  return 100.0 * (n_replicas - 1);
}

}  // namespace aec
