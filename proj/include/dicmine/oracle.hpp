#pragma once

// Brute-force frequent itemsets: enumerate every nonempty subset of the
// occurring items and count containment by linear scan. Slow and obvious.

#include <cstdint>
#include <vector>

#include "dicmine/bitcore.hpp"

namespace dicmine::oracle {

inline constexpr unsigned kMaxOracleItems = 20;

struct Entry {
  Mask64 mask = 0;
  std::uint64_t support = 0;

  friend bool operator==(const Entry&, const Entry&) = default;
};

struct OracleResult {
  std::vector<Entry> frequent;  // (k, mask) order
};

// Throws Error(UniverseTooLarge) when db.items() > 20.
OracleResult bruteforce_frequent(const BitDatabase& db, double minsup);

}  // namespace dicmine::oracle
