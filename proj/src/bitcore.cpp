#include "dicmine/bitcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dicmine/error.hpp"

namespace dicmine {

Mask64 encode_transaction(std::span<const ItemId> items, std::optional<std::size_t> line) {
  Mask64 mask = 0;
  for (ItemId id : items) {
    if (id >= kMaxItems) {
      std::string msg = "item id " + std::to_string(id) + " is outside [0, 63]";
      if (line) msg += " at line " + std::to_string(*line);
      throw Error(ErrorCode::ItemOutOfRange, msg);
    }
    mask |= item_bit(id);
  }
  return mask;
}

std::vector<ItemId> decode_items(Mask64 mask) {
  std::vector<ItemId> out;
  out.reserve(static_cast<std::size_t>(cardinality(mask)));
  while (mask != 0) {
    out.push_back(static_cast<ItemId>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

std::size_t support_threshold(double minsup, std::size_t n) {
  const double x = minsup * static_cast<double>(n);
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, x)) return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::ceil(x));
}

namespace {

unsigned inferred_universe(const std::vector<Mask64>& masks) {
  Mask64 all = 0;
  for (Mask64 t : masks) all |= t;
  return all == 0 ? 1u : static_cast<unsigned>(64 - std::countl_zero(all));
}

}  // namespace

BitDatabase::BitDatabase(std::vector<Mask64> masks, unsigned m)
    : masks_(std::move(masks)), m_(m) {
  if (masks_.empty()) throw Error(ErrorCode::EmptyDatabase, "database has no transactions");
  if (m_ > kMaxItems) {
    throw Error(ErrorCode::ItemOutOfRange,
                "item universe of " + std::to_string(m_) + " exceeds 64 items");
  }
  const Mask64 outside = ~universe_mask(m_);
  for (std::size_t j = 0; j < masks_.size(); ++j) {
    if ((masks_[j] & outside) != 0) {
      throw Error(ErrorCode::ItemOutOfRange,
                  "transaction " + std::to_string(j) + " uses an item >= m=" + std::to_string(m_));
    }
  }
}

BitDatabase::BitDatabase(std::vector<Mask64> masks)
    : BitDatabase(masks, inferred_universe(masks)) {}

Mask64 BitDatabase::occurring_items() const noexcept {
  Mask64 all = 0;
  for (Mask64 t : masks_) all |= t;
  return all;
}

}  // namespace dicmine
