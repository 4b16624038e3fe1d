#include "qs/gf2.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define QS_HAVE_AVX2_KERNEL 1
#endif

namespace qs::gf2::avx2 {

#ifdef QS_HAVE_AVX2_KERNEL

__attribute__((target("avx2"))) void xor_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + 8 <= words; i += 8) {
    __m256i a0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i a1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i + 4));
    __m256i b0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    __m256i b1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i + 4));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(a0, b0));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i + 4), _mm256_xor_si256(a1, b1));
  }
  for (; i + 4 <= words; i += 4) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(a, b));
  }
  for (; i < words; ++i) dst[i] ^= src[i];
}

#else

void xor_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  scalar::xor_into(dst, src, words);
}

#endif

}  // namespace qs::gf2::avx2
