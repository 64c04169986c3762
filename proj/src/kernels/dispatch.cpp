// Runtime selection of the containment-count variant. No intrinsics here.

#include <cstdlib>
#include <cstring>

#include "dicmine/kernels.hpp"

namespace dicmine::kernels {

namespace {

bool cpu_supports(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(DICMINE_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Avx512:
#if defined(DICMINE_HAVE_AVX512)
      return __builtin_cpu_supports("avx512f") && __builtin_cpu_supports("popcnt");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(DICMINE_HAVE_NEON)
      return true;  // mandatory on AArch64
#else
      return false;
#endif
  }
  return false;
}

Isa select_isa() noexcept {
  if (const char* pinned = std::getenv("DICMINE_ISA")) {
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Avx512, Isa::Neon}) {
      if (std::strcmp(pinned, isa_name(isa).data()) == 0 && cpu_supports(isa)) return isa;
    }
  }
  for (Isa isa : {Isa::Avx512, Isa::Avx2, Isa::Neon}) {
    if (cpu_supports(isa)) return isa;
  }
  return Isa::Scalar;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Avx512: return "avx512";
    case Isa::Neon: return "neon";
  }
  return "scalar";
}

bool isa_available(Isa isa) noexcept { return cpu_supports(isa); }

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Avx512, Isa::Neon}) {
    if (cpu_supports(isa)) out.push_back(isa);
  }
  return out;
}

Isa active_isa() noexcept {
  static const Isa isa = select_isa();
  return isa;
}

CountFn count_fn(Isa isa) noexcept {
  if (!cpu_supports(isa)) return &detail::count_scalar;
  switch (isa) {
#if defined(DICMINE_HAVE_AVX2)
    case Isa::Avx2: return &detail::count_avx2;
#endif
#if defined(DICMINE_HAVE_AVX512)
    case Isa::Avx512: return &detail::count_avx512;
#endif
#if defined(DICMINE_HAVE_NEON)
    case Isa::Neon: return &detail::count_neon;
#endif
    default: return &detail::count_scalar;
  }
}

std::uint64_t count_contained(std::span<const std::uint64_t> tx, std::uint64_t mask) noexcept {
  static const CountFn fn = count_fn(active_isa());
  return fn(tx.data(), tx.size(), mask);
}

std::uint64_t count_contained(Isa isa, std::span<const std::uint64_t> tx,
                              std::uint64_t mask) noexcept {
  return count_fn(isa)(tx.data(), tx.size(), mask);
}

}  // namespace dicmine::kernels
