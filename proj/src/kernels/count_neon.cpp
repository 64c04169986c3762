#include <arm_neon.h>

#include "dicmine/kernels.hpp"

namespace dicmine::kernels::detail {

std::uint64_t count_neon(const std::uint64_t* tx, std::size_t n, std::uint64_t mask) noexcept {
  const uint64x2_t m = vdupq_n_u64(mask);
  uint64x2_t acc0 = vdupq_n_u64(0);
  uint64x2_t acc1 = vdupq_n_u64(0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const uint64x2_t t0 = vld1q_u64(tx + i);
    const uint64x2_t t1 = vld1q_u64(tx + i + 2);
    acc0 = vsubq_u64(acc0, vceqq_u64(vandq_u64(t0, m), m));
    acc1 = vsubq_u64(acc1, vceqq_u64(vandq_u64(t1, m), m));
  }
  std::uint64_t count = vaddvq_u64(vaddq_u64(acc0, acc1));
  for (; i < n; ++i) count += (tx[i] & mask) == mask;
  return count;
}

}  // namespace dicmine::kernels::detail
