#include <immintrin.h>

#include "dicmine/kernels.hpp"

namespace dicmine::kernels::detail {

namespace {

inline std::uint64_t hsum_epi64(__m256i v) {
  const __m128i lo = _mm256_castsi256_si128(v);
  const __m128i hi = _mm256_extracti128_si256(v, 1);
  const __m128i s = _mm_add_epi64(lo, hi);
  return static_cast<std::uint64_t>(_mm_cvtsi128_si64(s)) +
         static_cast<std::uint64_t>(_mm_extract_epi64(s, 1));
}

}  // namespace

// cmpeq yields all-ones (-1) per matching lane, so subtracting it counts.
std::uint64_t count_avx2(const std::uint64_t* tx, std::size_t n, std::uint64_t mask) noexcept {
  const __m256i m = _mm256_set1_epi64x(static_cast<long long>(mask));
  __m256i acc0 = _mm256_setzero_si256();
  __m256i acc1 = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i t0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(tx + i));
    const __m256i t1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(tx + i + 4));
    acc0 = _mm256_sub_epi64(acc0, _mm256_cmpeq_epi64(_mm256_and_si256(t0, m), m));
    acc1 = _mm256_sub_epi64(acc1, _mm256_cmpeq_epi64(_mm256_and_si256(t1, m), m));
  }
  if (i + 4 <= n) {
    const __m256i t0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(tx + i));
    acc0 = _mm256_sub_epi64(acc0, _mm256_cmpeq_epi64(_mm256_and_si256(t0, m), m));
    i += 4;
  }
  std::uint64_t count = hsum_epi64(_mm256_add_epi64(acc0, acc1));
  for (; i < n; ++i) count += (tx[i] & mask) == mask;
  return count;
}

}  // namespace dicmine::kernels::detail
