#include "qs/gf2.hpp"

namespace qs::gf2::scalar {

void xor_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) dst[i] ^= src[i];
}

}  // namespace qs::gf2::scalar
