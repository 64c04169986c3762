#pragma once

// Dynamic Itemset Counting over a BitDatabase.
//
// Itemsets live in two vectors: `dashed` (still being counted, DashedCircle or
// DashedBox) and `solid` (counted over one full pass, SolidCircle or
// SolidBox). The database is cut into stop_max chunks of M transactions; at
// every chunk boundary the engines count, prune, generate candidates and
// finalize itemsets whose counters have seen every chunk once.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dicmine/bitcore.hpp"

namespace dicmine {

enum class Shape : std::uint8_t { DashedCircle, DashedBox, SolidCircle, SolidBox, Nil };

std::string_view shape_name(Shape shape) noexcept;

constexpr bool is_dashed(Shape s) noexcept {
  return s == Shape::DashedCircle || s == Shape::DashedBox;
}
constexpr bool is_solid(Shape s) noexcept {
  return s == Shape::SolidCircle || s == Shape::SolidBox;
}
constexpr bool is_box(Shape s) noexcept { return s == Shape::DashedBox || s == Shape::SolidBox; }

// Edges of the itemset lifecycle: DashedCircle -> DashedBox | SolidCircle | Nil,
// DashedBox -> SolidBox | Nil. Solid shapes are terminal.
bool is_legal_transition(Shape from, Shape to) noexcept;

struct CountedItemset {
  Mask64 mask = 0;
  int k = 0;                 // cardinality(mask)
  std::uint32_t stop = 0;    // chunks counted so far
  std::uint64_t supp = 0;    // transactions containing mask among those chunks
  Shape shape = Shape::DashedCircle;

  friend bool operator==(const CountedItemset&, const CountedItemset&) = default;
};

class MiningParams {
 public:
  // minsup in (0, 1], 1 <= interval <= n, threads >= 1; throws
  // Error(InvalidParams) otherwise.
  static MiningParams make(double minsup, std::size_t n, std::size_t interval, int threads = 1);

  double minsup() const noexcept { return minsup_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t interval() const noexcept { return interval_; }
  int threads() const noexcept { return threads_; }
  std::size_t minsup_count() const noexcept { return minsup_count_; }
  std::uint32_t stop_max() const noexcept { return stop_max_; }

  // Inclusive transaction range [first, last] of chunk `stop` (1-based). The
  // last chunk is short when M does not divide n.
  std::pair<std::size_t, std::size_t> chunk(std::uint32_t stop) const noexcept;

  MiningParams with_threads(int threads) const;

 private:
  MiningParams() = default;

  double minsup_ = 0.0;
  std::size_t n_ = 0;
  std::size_t interval_ = 0;
  int threads_ = 1;
  std::size_t minsup_count_ = 0;
  std::uint32_t stop_max_ = 0;
};

struct ItemsetCatalog {
  std::vector<CountedItemset> dashed;
  std::vector<CountedItemset> solid;
  // Every mask ever inserted, including pruned ones, so nothing re-enters.
  std::unordered_set<Mask64> known_masks;
  // Masks currently DashedBox or SolidBox. Monotone: a box never stops being one.
  std::unordered_set<Mask64> box_masks;
  // Masks that became boxes since the last make_candidates call.
  std::vector<Mask64> fresh_boxes;
  // Union of the frequent 1-itemsets.
  Mask64 frequent_items = 0;

  // Inserts `mask` into dashed as a fresh DashedCircle unless it is known.
  bool insert_candidate(Mask64 mask);

  // Records an itemset that is already fully counted (used by the first pass
  // and by tests that seed a catalog).
  void add_solid(const CountedItemset& itemset);

  // Structural invariants: unique masks across both vectors, shape/vector
  // agreement, k == cardinality(mask).
  bool well_formed() const;
};

struct Transition {
  Mask64 mask;
  Shape from;
  Shape to;
};

using TransitionObserver = std::function<void(const Transition&)>;

struct EngineOptions {
  // Off disables only the highest-possible-support pruning branch; promotion
  // to DashedBox still happens.
  bool prune_enabled = true;
  // Called from sequential sections only, in a deterministic order.
  TransitionObserver on_transition;
  // Copy every finalized itemset (SolidBox and SolidCircle) into
  // MiningResult::solid.
  bool collect_solid = false;
};

struct FrequentItemset {
  Mask64 mask = 0;
  int k = 0;
  std::uint64_t support = 0;

  friend bool operator==(const FrequentItemset&, const FrequentItemset&) = default;
};

struct MiningStats {
  double passes = 0.0;                    // 1 (first pass) + stops / stop_max
  std::uint64_t stops = 0;
  std::size_t peak_dashed = 0;
  std::uint64_t candidates_generated = 0; // includes first-pass 2-candidates
  std::uint64_t candidates_pruned = 0;
  std::uint64_t containment_tests = 0;    // itemset x transaction pairs counted
  std::uint64_t nested_stops = 0;         // stops counted transaction-partitioned
  double wall_seconds = 0.0;
};

struct MiningResult {
  std::vector<FrequentItemset> frequent;  // sorted by (k, mask)
  MiningStats stats;
  std::vector<CountedItemset> solid;      // only with EngineOptions::collect_solid
};

// Canonical (k, mask) order shared by every producer of frequent itemsets.
bool canonical_less(Mask64 a, Mask64 b) noexcept;

enum class CountMode { Sequential, ItemsetPartitioned, TransactionPartitioned };

// --- Engine steps -----------------------------------------------------------

// Counts every 1-itemset over the whole database; frequent ones become
// SolidBox, the rest SolidCircle. Pairwise joins of the frequent items enter
// dashed as DashedCircle. `serial` selects the transaction-major reference
// count instead of the parallel one. Returns the number of 2-candidates.
std::size_t first_pass(const BitDatabase& db, const MiningParams& params, ItemsetCatalog& catalog,
                       bool serial = false);

// Reference count: outer loop over transactions [first, last], inner loop over
// itemsets. Every dashed itemset gets stop += 1.
void count_support_serial(std::span<CountedItemset> dashed, const BitDatabase& db,
                          std::size_t first, std::size_t last);

// Parallel count over [first, last]. With at least `threads` itemsets each
// worker owns a disjoint slice of itemsets; otherwise each itemset's range is
// split across ceil(threads / |dashed|) workers and the partial counts are
// summed. Result is identical to count_support_serial.
CountMode count_support_interval(std::span<CountedItemset> dashed, const BitDatabase& db,
                                 std::size_t first, std::size_t last, int threads);

// supp + M * (stop_max - stop): an upper bound on the final support.
std::uint64_t highest_possible_support(const CountedItemset& itemset, const MiningParams& params);

struct PruneOutcome {
  std::size_t promoted = 0;
  std::size_t pruned = 0;
};

// Promotes DashedCircle itemsets at or above minsup_count to DashedBox; marks
// DashedCircle itemsets whose highest possible support is below minsup_count
// Nil together with every DashedCircle superset; erases Nil entries.
PruneOutcome prune(ItemsetCatalog& catalog, const MiningParams& params,
                   const EngineOptions& options = {});

enum class CandidateScan {
  Fresh,  // joins only boxes created since the last call
  All,    // joins every box in the catalog
};

// Joins box itemsets with frequent items; a join C is inserted as
// DashedCircle iff it is unknown and each of its immediate subsets is a box.
// Returns the number of inserted candidates.
std::size_t make_candidates(ItemsetCatalog& catalog, CandidateScan scan = CandidateScan::Fresh);

struct FullPassOutcome {
  std::size_t boxes = 0;
  std::size_t circles = 0;
};

// Moves dashed itemsets with stop == stop_max into solid as SolidBox
// (supp >= minsup_count) or SolidCircle.
FullPassOutcome check_full_pass(ItemsetCatalog& catalog, const MiningParams& params,
                                const EngineOptions& options = {});

// --- Engines ----------------------------------------------------------------

// Single-threaded DIC with the reference counting loop.
MiningResult mine_serial(const BitDatabase& db, const MiningParams& params,
                         const EngineOptions& options = {});

// Thread-parallel DIC; frequent output equals mine_serial for the same input.
MiningResult mine_parallel(const BitDatabase& db, const MiningParams& params,
                           const EngineOptions& options = {});

}  // namespace dicmine
