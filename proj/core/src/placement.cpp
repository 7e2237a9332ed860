#include "aec/placement.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace aec {

Placement place(std::size_t num_blocks, std::uint32_t n_locations,
                std::uint64_t seed) {
  if (n_locations < 2) {
    throw std::invalid_argument("placement needs at least 2 locations");
  }
  Placement placement;
  placement.n_locations = n_locations;
  placement.seed = seed;
  placement.location.resize(num_blocks);
  Rng rng = Rng::stream(seed, "placement");
  for (std::size_t b = 0; b < num_blocks; ++b) {
    placement.location[b] = static_cast<std::uint32_t>(rng.uniform(n_locations));
  }
  return placement;
}

std::vector<std::int64_t> location_counts(const Placement& placement) {
  std::vector<std::int64_t> counts(placement.n_locations, 0);
  for (const std::uint32_t loc : placement.location) ++counts[loc];
  return counts;
}

LocationStats location_stats(const Placement& placement) {
  const std::vector<std::int64_t> counts = location_counts(placement);
  LocationStats stats;
  if (counts.empty()) return stats;
  const double total = static_cast<double>(placement.location.size());
  stats.mean = total / static_cast<double>(counts.size());
  if (counts.size() < 2) return stats;
  double ss = 0.0;
  for (const std::int64_t c : counts) {
    const double d = static_cast<double>(c) - stats.mean;
    ss += d * d;
  }
  stats.stdev = std::sqrt(ss / static_cast<double>(counts.size() - 1));
  return stats;
}

std::vector<bool> sample_disaster(std::uint32_t n_locations, double fraction,
                                  std::uint64_t seed) {
  if (fraction < 0.0 || fraction > 1.0) {
    throw std::invalid_argument("disaster fraction must be in [0, 1]");
  }
  const auto count = static_cast<std::uint32_t>(
      std::llround(fraction * static_cast<double>(n_locations)));
  std::vector<std::uint32_t> locations(n_locations);
  std::iota(locations.begin(), locations.end(), 0u);
  Rng rng = Rng::stream(seed, "disaster");
  std::vector<bool> down(n_locations, false);
  // Partial Fisher-Yates: the first `count` entries become the failed set.
  for (std::uint32_t k = 0; k < count; ++k) {
    const std::uint64_t pick = k + rng.uniform(n_locations - k);
    std::swap(locations[k], locations[pick]);
    down[locations[k]] = true;
  }
  return down;
}

}  // namespace aec
