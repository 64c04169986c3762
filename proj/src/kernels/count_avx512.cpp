#include <immintrin.h>

#include "dicmine/kernels.hpp"

namespace dicmine::kernels::detail {

std::uint64_t count_avx512(const std::uint64_t* tx, std::size_t n, std::uint64_t mask) noexcept {
  const __m512i m = _mm512_set1_epi64(static_cast<long long>(mask));
  const __m512i one = _mm512_set1_epi64(1);
  __m512i acc0 = _mm512_setzero_si512();
  __m512i acc1 = _mm512_setzero_si512();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    const __m512i t0 = _mm512_loadu_si512(tx + i);
    const __m512i t1 = _mm512_loadu_si512(tx + i + 8);
    const __mmask8 k0 = _mm512_cmpeq_epi64_mask(_mm512_and_si512(t0, m), m);
    const __mmask8 k1 = _mm512_cmpeq_epi64_mask(_mm512_and_si512(t1, m), m);
    acc0 = _mm512_mask_add_epi64(acc0, k0, acc0, one);
    acc1 = _mm512_mask_add_epi64(acc1, k1, acc1, one);
  }
  std::uint64_t count =
      static_cast<std::uint64_t>(_mm512_reduce_add_epi64(_mm512_add_epi64(acc0, acc1)));
  if (i < n) {
    // Masked loads cover the ragged tail without reading past the end.
    for (; i < n; i += 8) {
      const std::size_t left = n - i;
      const __mmask8 live = left >= 8 ? __mmask8(0xFF) : __mmask8((1u << left) - 1);
      const __m512i t = _mm512_maskz_loadu_epi64(live, tx + i);
      const __mmask8 k = _mm512_mask_cmpeq_epi64_mask(live, _mm512_and_si512(t, m), m);
      count += static_cast<std::uint64_t>(_mm_popcnt_u32(k));
    }
  }
  return count;
}

}  // namespace dicmine::kernels::detail
