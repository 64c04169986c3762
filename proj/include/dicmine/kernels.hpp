#pragma once

// Containment-count kernels: how many transactions in a run contain a mask.
// This is the inner loop of support counting. A scalar reference is always
// built; AVX2 / AVX-512 (x86-64) and NEON (AArch64) variants are compiled when
// the target allows and selected at runtime from CPU features.
//
// DICMINE_ISA=scalar|avx2|avx512|neon in the environment pins the dispatched
// variant (ignored if the CPU lacks it).

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace dicmine::kernels {

enum class Isa { Scalar, Avx2, Avx512, Neon };

using CountFn = std::uint64_t (*)(const std::uint64_t* tx, std::size_t n,
                                  std::uint64_t mask) noexcept;

std::string_view isa_name(Isa isa) noexcept;

// Compiled in and supported by the running CPU.
bool isa_available(Isa isa) noexcept;
std::vector<Isa> available_isas();

// The variant used by count_contained().
Isa active_isa() noexcept;

CountFn count_fn(Isa isa) noexcept;

// Number of t in `tx` with (t & mask) == mask, using the active variant.
std::uint64_t count_contained(std::span<const std::uint64_t> tx, std::uint64_t mask) noexcept;

// Same, pinned to `isa`; falls back to scalar if it is unavailable.
std::uint64_t count_contained(Isa isa, std::span<const std::uint64_t> tx,
                              std::uint64_t mask) noexcept;

namespace detail {
std::uint64_t count_scalar(const std::uint64_t* tx, std::size_t n, std::uint64_t mask) noexcept;
std::uint64_t count_avx2(const std::uint64_t* tx, std::size_t n, std::uint64_t mask) noexcept;
std::uint64_t count_avx512(const std::uint64_t* tx, std::size_t n, std::uint64_t mask) noexcept;
std::uint64_t count_neon(const std::uint64_t* tx, std::size_t n, std::uint64_t mask) noexcept;
}  // namespace detail

}  // namespace dicmine::kernels
