#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace aec {

/// Block payload. All payloads of one lattice share the same length; length
/// zero is the availability-only mode used by the simulator.
using Payload = std::vector<std::uint8_t>;

/// dst ^= src. Sizes must match.
void xor_into(Payload& dst, std::span<const std::uint8_t> src);

Payload xor_of(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

}  // namespace aec
