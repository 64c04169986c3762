#include "dicmine/kernels.hpp"

namespace dicmine::kernels::detail {

// Reference variant. Kept as the plain branch-free loop so it can serve as
// the equivalence baseline for every vector variant.
std::uint64_t count_scalar(const std::uint64_t* tx, std::size_t n, std::uint64_t mask) noexcept {
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < n; ++i) count += (tx[i] & mask) == mask;
  return count;
}

}  // namespace dicmine::kernels::detail
