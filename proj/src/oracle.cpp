#include "dicmine/oracle.hpp"

#include <algorithm>
#include <string>

#include "dicmine/error.hpp"

namespace dicmine::oracle {

OracleResult bruteforce_frequent(const BitDatabase& db, double minsup) {
  if (db.items() > kMaxOracleItems) {
    throw Error(ErrorCode::UniverseTooLarge,
                "brute-force oracle supports at most " + std::to_string(kMaxOracleItems) +
                    " items, database has m=" + std::to_string(db.items()));
  }
  const std::size_t threshold = support_threshold(minsup, db.size());
  const Mask64 present = db.occurring_items();

  OracleResult result;
  // Walk every nonempty submask of `present`.
  for (Mask64 s = present; s != 0; s = (s - 1) & present) {
    std::uint64_t support = 0;
    for (Mask64 t : db.masks()) support += contains(s, t) ? 1 : 0;
    if (support >= threshold) result.frequent.push_back(Entry{s, support});
  }
  std::sort(result.frequent.begin(), result.frequent.end(), [](const Entry& a, const Entry& b) {
    const int ka = cardinality(a.mask), kb = cardinality(b.mask);
    return ka != kb ? ka < kb : a.mask < b.mask;
  });
  return result;
}

}  // namespace dicmine::oracle
