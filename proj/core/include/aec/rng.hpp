#pragma once

#include <cstdint>
#include <string_view>

namespace aec {

/// Portable seedable generator (splitmix64). Simulation results must be
/// reproducible bit-for-bit across platforms, so no <random> engines or
/// distributions are used anywhere in the simulator.
///
/// Independent streams are derived from one base seed and a purpose tag
/// ("placement", "disaster", ...) so that, e.g., changing the disaster draw
/// never perturbs the placement of the same scenario.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static Rng stream(std::uint64_t seed, std::string_view tag);

  std::uint64_t next_u64();

  /// Uniform integer in [0, bound), exact (rejection sampling). bound >= 1.
  std::uint64_t uniform(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

}  // namespace aec
