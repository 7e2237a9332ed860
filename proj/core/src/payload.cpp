#include "aec/payload.hpp"

#include <cstring>
#include <stdexcept>

namespace aec {

void xor_into(Payload& dst, std::span<const std::uint8_t> src) {
  if (dst.size() != src.size()) {
    throw std::invalid_argument("payload size mismatch in xor");
  }
  std::size_t i = 0;
  const std::size_t words = dst.size() / 8;
  for (std::size_t w = 0; w < words; ++w, i += 8) {
    std::uint64_t a, b;
    std::memcpy(&a, dst.data() + i, 8);
    std::memcpy(&b, src.data() + i, 8);
    a ^= b;
    std::memcpy(dst.data() + i, &a, 8);
  }
  for (; i < dst.size(); ++i) dst[i] ^= src[i];
}

Payload xor_of(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  Payload out(a.begin(), a.end());
  xor_into(out, b);
  return out;
}

}  // namespace aec
