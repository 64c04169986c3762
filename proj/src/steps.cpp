#include <omp.h>

#include <algorithm>
#include <unordered_set>
#include <vector>

#include "dicmine/dic.hpp"
#include "dicmine/kernels.hpp"

namespace dicmine {

namespace {

// Transactions per tile in itemset-partitioned counting. A worker sweeps all
// of its itemsets over one tile before moving on, so the tile stays in cache.
constexpr std::size_t kTileTx = 4096;

void notify(const EngineOptions& options, Mask64 mask, Shape from, Shape to) {
  if (options.on_transition) options.on_transition(Transition{mask, from, to});
}

}  // namespace

void count_support_serial(std::span<CountedItemset> dashed, const BitDatabase& db,
                          std::size_t first, std::size_t last) {
  const auto tx = db.masks();
  for (std::size_t j = first; j <= last; ++j) {
    const Mask64 t = tx[j];
    for (auto& itemset : dashed) {
      if (contains(itemset.mask, t)) ++itemset.supp;
    }
  }
  for (auto& itemset : dashed) ++itemset.stop;
}

CountMode count_support_interval(std::span<CountedItemset> dashed, const BitDatabase& db,
                                 std::size_t first, std::size_t last, int threads) {
  if (dashed.empty()) return CountMode::Sequential;
  const std::span<const Mask64> chunk = db.masks().subspan(first, last - first + 1);
  const std::size_t count = dashed.size();

  if (threads <= 1) {
    for (std::size_t base = 0; base < chunk.size(); base += kTileTx) {
      const auto tile = chunk.subspan(base, std::min(kTileTx, chunk.size() - base));
      for (auto& itemset : dashed) itemset.supp += kernels::count_contained(tile, itemset.mask);
    }
    for (auto& itemset : dashed) ++itemset.stop;
    return CountMode::Sequential;
  }

  if (count >= static_cast<std::size_t>(threads)) {
#pragma omp parallel num_threads(threads)
    {
      const std::size_t workers = static_cast<std::size_t>(omp_get_num_threads());
      const std::size_t w = static_cast<std::size_t>(omp_get_thread_num());
      const std::size_t lo = count * w / workers;
      const std::size_t hi = count * (w + 1) / workers;
      for (std::size_t base = 0; base < chunk.size(); base += kTileTx) {
        const auto tile = chunk.subspan(base, std::min(kTileTx, chunk.size() - base));
        for (std::size_t i = lo; i < hi; ++i) {
          dashed[i].supp += kernels::count_contained(tile, dashed[i].mask);
        }
      }
      for (std::size_t i = lo; i < hi; ++i) ++dashed[i].stop;
    }
    return CountMode::ItemsetPartitioned;
  }

  // Fewer itemsets than workers: each itemset gets a group of workers that
  // split its transaction range; partial sums are reduced afterwards.
  const std::size_t group = (static_cast<std::size_t>(threads) + count - 1) / count;
  const std::size_t tasks = count * group;
  std::vector<std::uint64_t> partial(tasks, 0);
  const long long task_count = static_cast<long long>(tasks);
#pragma omp parallel for num_threads(threads) schedule(static)
  for (long long t = 0; t < task_count; ++t) {
    const std::size_t i = static_cast<std::size_t>(t) / group;
    const std::size_t part = static_cast<std::size_t>(t) % group;
    const std::size_t lo = chunk.size() * part / group;
    const std::size_t hi = chunk.size() * (part + 1) / group;
    partial[static_cast<std::size_t>(t)] =
        kernels::count_contained(chunk.subspan(lo, hi - lo), dashed[i].mask);
  }
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t sum = 0;
    for (std::size_t part = 0; part < group; ++part) sum += partial[i * group + part];
    dashed[i].supp += sum;
    ++dashed[i].stop;
  }
  return CountMode::TransactionPartitioned;
}

std::size_t first_pass(const BitDatabase& db, const MiningParams& params, ItemsetCatalog& catalog,
                       bool serial) {
  std::vector<CountedItemset> singles;
  singles.reserve(db.items());
  for (ItemId p = 0; p < db.items(); ++p) {
    singles.push_back(CountedItemset{item_bit(p), 1, 0, 0, Shape::Nil});
  }
  const std::size_t last = db.size() - 1;
  if (serial) {
    count_support_serial(singles, db, 0, last);
  } else {
    count_support_interval(singles, db, 0, last, params.threads());
  }

  std::vector<Mask64> frequent;
  for (auto& single : singles) {
    single.stop = params.stop_max();
    if (single.supp >= params.minsup_count()) {
      single.shape = Shape::SolidBox;
      frequent.push_back(single.mask);
      catalog.frequent_items |= single.mask;
    } else {
      single.shape = Shape::SolidCircle;
    }
    catalog.add_solid(single);
  }

  std::size_t inserted = 0;
  for (std::size_t a = 0; a < frequent.size(); ++a) {
    for (std::size_t b = a + 1; b < frequent.size(); ++b) {
      inserted += catalog.insert_candidate(join(frequent[a], frequent[b])) ? 1 : 0;
    }
  }
  return inserted;
}

std::uint64_t highest_possible_support(const CountedItemset& itemset, const MiningParams& params) {
  const std::uint64_t remaining_chunks =
      itemset.stop >= params.stop_max() ? 0 : params.stop_max() - itemset.stop;
  return itemset.supp + static_cast<std::uint64_t>(params.interval()) * remaining_chunks;
}

PruneOutcome prune(ItemsetCatalog& catalog, const MiningParams& params,
                   const EngineOptions& options) {
  auto& dashed = catalog.dashed;
  const long long count = static_cast<long long>(dashed.size());
  const std::uint64_t threshold = params.minsup_count();
  std::vector<Shape> before(dashed.size());

  // Phase 1: each itemset decides its own fate.
#pragma omp parallel for num_threads(params.threads()) schedule(static) if (params.threads() > 1)
  for (long long i = 0; i < count; ++i) {
    auto& itemset = dashed[static_cast<std::size_t>(i)];
    before[static_cast<std::size_t>(i)] = itemset.shape;
    if (itemset.shape != Shape::DashedCircle) continue;
    if (itemset.supp >= threshold) {
      itemset.shape = Shape::DashedBox;
    } else if (options.prune_enabled && highest_possible_support(itemset, params) < threshold) {
      itemset.shape = Shape::Nil;
    }
  }

  std::vector<Mask64> pruned;
  for (std::size_t i = 0; i < dashed.size(); ++i) {
    if (before[i] == Shape::DashedCircle && dashed[i].shape == Shape::Nil) {
      pruned.push_back(dashed[i].mask);
    }
  }

  // Phase 2: a-priori principle. Each circle checks whether it contains a
  // pruned itemset and marks only itself. Small circles probe their own
  // submasks in a hash set; large ones scan the pruned list.
  if (!pruned.empty()) {
    const std::unordered_set<Mask64> pruned_set(pruned.begin(), pruned.end());
#pragma omp parallel for num_threads(params.threads()) schedule(dynamic, 256) if (params.threads() > 1)
    for (long long i = 0; i < count; ++i) {
      auto& itemset = dashed[static_cast<std::size_t>(i)];
      if (itemset.shape != Shape::DashedCircle) continue;
      bool hit = false;
      if (itemset.k < 63 && (std::size_t{1} << itemset.k) <= pruned.size()) {
        for (Mask64 s = (itemset.mask - 1) & itemset.mask; s != 0 && !hit;
             s = (s - 1) & itemset.mask) {
          hit = pruned_set.contains(s);
        }
      } else {
        for (Mask64 p : pruned) {
          if (p != itemset.mask && contains(p, itemset.mask)) {
            hit = true;
            break;
          }
        }
      }
      if (hit) itemset.shape = Shape::Nil;
    }
  }

  PruneOutcome outcome;
  for (std::size_t i = 0; i < dashed.size(); ++i) {
    const Shape now = dashed[i].shape;
    if (now == before[i]) continue;
    notify(options, dashed[i].mask, before[i], now);
    if (now == Shape::DashedBox) {
      ++outcome.promoted;
      catalog.box_masks.insert(dashed[i].mask);
      catalog.fresh_boxes.push_back(dashed[i].mask);
    } else if (now == Shape::Nil) {
      ++outcome.pruned;
    }
  }
  std::erase_if(dashed, [](const CountedItemset& i) { return i.shape == Shape::Nil; });
  return outcome;
}

namespace {

bool immediate_subsets_are_boxes(const ItemsetCatalog& catalog, Mask64 candidate) {
  for (Mask64 rest = candidate; rest != 0; rest &= rest - 1) {
    const Mask64 subset = candidate & ~(rest & (~rest + 1));
    if (!catalog.box_masks.contains(subset)) return false;
  }
  return true;
}

}  // namespace

std::size_t make_candidates(ItemsetCatalog& catalog, CandidateScan scan) {
  std::vector<Mask64> bases;
  if (scan == CandidateScan::Fresh) {
    bases.swap(catalog.fresh_boxes);
  } else {
    catalog.fresh_boxes.clear();
    for (const auto& i : catalog.solid) {
      if (i.shape == Shape::SolidBox) bases.push_back(i.mask);
    }
    for (const auto& i : catalog.dashed) {
      if (i.shape == Shape::DashedBox) bases.push_back(i.mask);
    }
  }

  std::size_t inserted = 0;
  for (Mask64 base : bases) {
    for (Mask64 rest = catalog.frequent_items & ~base; rest != 0; rest &= rest - 1) {
      const Mask64 candidate = join(base, rest & (~rest + 1));
      if (catalog.known_masks.contains(candidate)) continue;
      if (!immediate_subsets_are_boxes(catalog, candidate)) continue;
      inserted += catalog.insert_candidate(candidate) ? 1 : 0;
    }
  }
  return inserted;
}

FullPassOutcome check_full_pass(ItemsetCatalog& catalog, const MiningParams& params,
                                const EngineOptions& options) {
  auto& dashed = catalog.dashed;
  const long long count = static_cast<long long>(dashed.size());
  const std::uint64_t threshold = params.minsup_count();
  const std::uint32_t stop_max = params.stop_max();
  std::vector<Shape> final_shape(dashed.size(), Shape::Nil);

#pragma omp parallel for num_threads(params.threads()) schedule(static) if (params.threads() > 1)
  for (long long i = 0; i < count; ++i) {
    const auto& itemset = dashed[static_cast<std::size_t>(i)];
    if (itemset.stop == stop_max) {
      final_shape[static_cast<std::size_t>(i)] =
          itemset.supp >= threshold ? Shape::SolidBox : Shape::SolidCircle;
    }
  }

  FullPassOutcome outcome;
  for (std::size_t i = 0; i < dashed.size(); ++i) {
    const Shape to = final_shape[i];
    if (to == Shape::Nil) continue;
    CountedItemset itemset = dashed[i];
    if (to == Shape::SolidBox && itemset.shape == Shape::DashedCircle) {
      // Frequent but never promoted (only when called outside the engine loop,
      // which always prunes first): take the DashedBox step explicitly.
      notify(options, itemset.mask, Shape::DashedCircle, Shape::DashedBox);
      itemset.shape = Shape::DashedBox;
      catalog.box_masks.insert(itemset.mask);
      catalog.fresh_boxes.push_back(itemset.mask);
    }
    notify(options, itemset.mask, itemset.shape, to);
    itemset.shape = to;
    catalog.solid.push_back(itemset);
    ++(to == Shape::SolidBox ? outcome.boxes : outcome.circles);
    dashed[i].shape = Shape::Nil;
  }
  std::erase_if(dashed, [](const CountedItemset& i) { return i.shape == Shape::Nil; });
  return outcome;
}

}  // namespace dicmine
