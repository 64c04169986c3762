#pragma once

// Direct bit representation of transactions and itemsets: one 64-bit word per
// transaction, bit p set iff item p is present.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace dicmine {

using Mask64 = std::uint64_t;
using ItemId = std::uint32_t;

inline constexpr unsigned kMaxItems = 64;

// OR of (1 << id) over `items`. Duplicates collapse. Throws
// Error(ItemOutOfRange) for id >= 64; `line` is quoted in the message when set.
Mask64 encode_transaction(std::span<const ItemId> items,
                          std::optional<std::size_t> line = std::nullopt);

// Item ids of `mask`, ascending.
std::vector<ItemId> decode_items(Mask64 mask);

constexpr bool contains(Mask64 itemset, Mask64 transaction) noexcept {
  return (itemset & transaction) == itemset;
}

constexpr Mask64 join(Mask64 a, Mask64 b) noexcept { return a | b; }

constexpr int cardinality(Mask64 mask) noexcept { return std::popcount(mask); }

constexpr Mask64 item_bit(ItemId id) noexcept { return Mask64{1} << id; }

// Mask with the low `m` bits set (m in 0..64).
constexpr Mask64 universe_mask(unsigned m) noexcept {
  return m >= 64 ? ~Mask64{0} : (Mask64{1} << m) - 1;
}

// Absolute support threshold ceil(minsup * n). Products that land within
// floating-point noise of an integer snap to that integer, so 0.1 * 30 is 3.
std::size_t support_threshold(double minsup, std::size_t n);

// The n-element array of transaction masks over an item universe of m <= 64
// items. Immutable once built.
class BitDatabase {
 public:
  // Throws EmptyDatabase for no masks, ItemOutOfRange if m > 64 or a mask has
  // bits at or above m.
  BitDatabase(std::vector<Mask64> masks, unsigned m);

  // Universe size inferred as highest set bit + 1 (at least 1).
  explicit BitDatabase(std::vector<Mask64> masks);

  std::span<const Mask64> masks() const noexcept { return masks_; }
  std::size_t size() const noexcept { return masks_.size(); }
  unsigned items() const noexcept { return m_; }
  Mask64 operator[](std::size_t j) const noexcept { return masks_[j]; }

  // OR of all transactions: the items that occur at least once.
  Mask64 occurring_items() const noexcept;

  friend bool operator==(const BitDatabase&, const BitDatabase&) = default;

 private:
  std::vector<Mask64> masks_;
  unsigned m_;
};

}  // namespace dicmine
