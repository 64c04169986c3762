#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "dicmine/dataio.hpp"
#include "dicmine/error.hpp"

namespace dicmine::dataio {

namespace {

// Every draw goes through these two helpers so the output depends only on
// the mt19937_64 stream, whose sequence the C++ standard pins down.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(engine_()) * bound) >> 64);
  }

  // True with probability p53 / 2^53.
  bool chance(std::uint64_t p53) { return (engine_() >> 11) < p53; }

  // Index into `cumulative` (inclusive prefix sums) drawn proportionally.
  std::size_t weighted(const std::vector<std::uint64_t>& cumulative) {
    const std::uint64_t r = below(cumulative.back());
    std::size_t lo = 0, hi = cumulative.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (cumulative[mid] > r) hi = mid; else lo = mid + 1;
    }
    return lo;
  }

 private:
  std::mt19937_64 engine_;
};

constexpr double kWeightScale = 1099511627776.0;  // 2^40
constexpr std::uint64_t kOne53 = std::uint64_t{1} << 53;

// floor(2^40 * ratio^rank), at least 1. Plain repeated multiplication keeps
// the values identical on every IEEE-754 target.
std::vector<std::uint64_t> geometric_weights(std::size_t count, double ratio) {
  std::vector<std::uint64_t> w(count);
  double v = kWeightScale;
  for (std::size_t r = 0; r < count; ++r) {
    w[r] = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(v));
    v *= ratio;
  }
  return w;
}

std::vector<std::uint64_t> prefix_sums(const std::vector<std::uint64_t>& w) {
  std::vector<std::uint64_t> c(w.size());
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < w.size(); ++i) c[i] = acc += w[i];
  return c;
}

struct Pattern {
  std::vector<ItemId> items;
  std::uint64_t keep53;  // per-item keep probability, scaled by 2^53
};

}  // namespace

void validate(const DatasetSpec& spec) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::SpecError, what); };
  if (spec.n < 1) fail("n must be >= 1");
  if (spec.m < 1 || spec.m > kMaxItems) fail("m must lie in [1, 64], got " + std::to_string(spec.m));
  if (!(spec.avg_len >= 1.0 && spec.avg_len <= spec.m)) {
    fail("avg_len must lie in [1, m=" + std::to_string(spec.m) + "], got " + std::to_string(spec.avg_len));
  }
  if (!(spec.skew > 0.0 && spec.skew <= 1.0)) fail("skew must lie in (0, 1], got " + std::to_string(spec.skew));
}

BitDatabase generate_synthetic(const DatasetSpec& spec) {
  validate(spec);
  Draw draw(spec.seed);
  const unsigned m = spec.m;

  // Item popularity: a seeded permutation assigns geometric weights by rank.
  std::vector<ItemId> order(m);
  for (ItemId i = 0; i < m; ++i) order[i] = i;
  for (std::size_t i = m; i > 1; --i) std::swap(order[i - 1], order[draw.below(i)]);
  const auto rank_weight = geometric_weights(m, spec.skew);
  std::vector<std::uint64_t> item_weight(m);
  for (std::size_t r = 0; r < m; ++r) item_weight[order[r]] = rank_weight[r];
  const auto item_cumulative = prefix_sums(item_weight);

  // Pattern pool. Half of each pattern is carried over from its predecessor
  // so consecutive patterns overlap.
  const std::size_t pattern_count = 2 * static_cast<std::size_t>(m);
  const std::uint64_t mean_size =
      std::clamp<std::uint64_t>(static_cast<std::uint64_t>(spec.avg_len / 4.0), 2, m);
  std::vector<Pattern> patterns;
  patterns.reserve(pattern_count);
  for (std::size_t j = 0; j < pattern_count; ++j) {
    const std::uint64_t size = std::min<std::uint64_t>(1 + draw.below(2 * mean_size - 1), m);
    Mask64 chosen = 0;
    Pattern p;
    if (!patterns.empty()) {
      const auto& prev = patterns.back().items;
      for (std::uint64_t c = 0; c < size / 2 && c < prev.size(); ++c) {
        const ItemId id = prev[draw.below(prev.size())];
        if (!(chosen & item_bit(id))) { chosen |= item_bit(id); p.items.push_back(id); }
      }
    }
    for (std::uint64_t tries = 0; p.items.size() < size && tries < 8 * size; ++tries) {
      const auto id = static_cast<ItemId>(draw.weighted(item_cumulative));
      if (!(chosen & item_bit(id))) { chosen |= item_bit(id); p.items.push_back(id); }
    }
    p.keep53 = kOne53 / 2 + draw.below(kOne53 / 2);
    patterns.push_back(std::move(p));
  }
  const auto pattern_cumulative = prefix_sums(geometric_weights(pattern_count, spec.skew));

  // Target lengths average exactly avg_len: randomized rounding, then a
  // symmetric integer jitter that never needs clamping.
  const auto whole = static_cast<std::uint64_t>(std::floor(spec.avg_len));
  const auto frac53 = static_cast<std::uint64_t>((spec.avg_len - static_cast<double>(whole)) *
                                                 static_cast<double>(kOne53));

  std::vector<Mask64> masks;
  masks.reserve(spec.n);
  std::vector<ItemId> scratch;
  for (std::size_t t = 0; t < spec.n; ++t) {
    std::uint64_t len = whole + (draw.chance(frac53) ? 1 : 0);
    const std::uint64_t spread = std::min({len - 1, m - len, len / 4});
    len = len - spread + draw.below(2 * spread + 1);

    Mask64 mask = 0;
    auto size = [&] { return static_cast<std::uint64_t>(cardinality(mask)); };
    for (std::size_t picks = 0; size() < len && picks < 4 * m; ++picks) {
      const Pattern& p = patterns[draw.weighted(pattern_cumulative)];
      scratch = p.items;
      for (std::size_t i = scratch.size(); i > 1; --i) std::swap(scratch[i - 1], scratch[draw.below(i)]);
      for (ItemId id : scratch) {
        if (size() == len) break;
        if (draw.chance(p.keep53)) mask |= item_bit(id);
      }
    }
    // Patterns exhausted: top up from the remaining items by popularity.
    while (size() < len) {
      std::vector<std::uint64_t> missing_cumulative(m);
      std::uint64_t acc = 0;
      for (ItemId i = 0; i < m; ++i) {
        if (!(mask & item_bit(i))) acc += item_weight[i];
        missing_cumulative[i] = acc;
      }
      mask |= item_bit(static_cast<ItemId>(draw.weighted(missing_cumulative)));
    }
    masks.push_back(mask);
  }
  return BitDatabase(std::move(masks), m);
}

}  // namespace dicmine::dataio
