#pragma once

#include <cstdint>
#include <vector>

#include "aec/rng.hpp"

namespace aec {

/// Random assignment of blocks to failure domains: every block slot gets an
/// independent uniform location in [0, n). Deterministic per seed.
struct Placement {
  std::vector<std::uint32_t> location;  // by block slot
  std::uint32_t n_locations = 0;
  std::uint64_t seed = 0;
};

Placement place(std::size_t num_blocks, std::uint32_t n_locations,
                std::uint64_t seed);

std::vector<std::int64_t> location_counts(const Placement& placement);

struct LocationStats {
  double mean = 0.0;
  double stdev = 0.0;  // sample standard deviation over locations
};

LocationStats location_stats(const Placement& placement);

/// The unavailable-location set of one disaster: round(fraction*n) distinct
/// locations, drawn from the "disaster" stream of the seed.
std::vector<bool> sample_disaster(std::uint32_t n_locations, double fraction,
                                  std::uint64_t seed);

}  // namespace aec
