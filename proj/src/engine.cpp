#include <algorithm>
#include <chrono>

#include "dicmine/dic.hpp"
#include "dicmine/error.hpp"

namespace dicmine {

namespace {

MiningResult run(const BitDatabase& db, const MiningParams& requested, const EngineOptions& options,
                 bool serial) {
  if (requested.n() != db.size()) {
    throw Error(ErrorCode::InvalidParams, "params were derived for n=" +
                                              std::to_string(requested.n()) + " but database has " +
                                              std::to_string(db.size()) + " transactions");
  }
  const MiningParams params = serial ? requested.with_threads(1) : requested;
  const auto started = std::chrono::steady_clock::now();

  MiningResult result;
  MiningStats& stats = result.stats;
  ItemsetCatalog catalog;

  stats.candidates_generated = first_pass(db, params, catalog, serial);
  stats.containment_tests = static_cast<std::uint64_t>(db.items()) * db.size();
  stats.peak_dashed = catalog.dashed.size();

  std::uint32_t stop = 0;
  while (!catalog.dashed.empty()) {
    stop = stop == params.stop_max() ? 1 : stop + 1;
    const auto [first, last] = params.chunk(stop);
    stats.containment_tests += catalog.dashed.size() * (last - first + 1);
    if (serial) {
      count_support_serial(catalog.dashed, db, first, last);
    } else if (count_support_interval(catalog.dashed, db, first, last, params.threads()) ==
               CountMode::TransactionPartitioned) {
      ++stats.nested_stops;
    }
    stats.candidates_pruned += prune(catalog, params, options).pruned;
    stats.candidates_generated += make_candidates(catalog);
    stats.peak_dashed = std::max(stats.peak_dashed, catalog.dashed.size());
    check_full_pass(catalog, params, options);
    ++stats.stops;
  }

  for (const auto& itemset : catalog.solid) {
    if (itemset.shape == Shape::SolidBox) {
      result.frequent.push_back(FrequentItemset{itemset.mask, itemset.k, itemset.supp});
    }
  }
  std::sort(result.frequent.begin(), result.frequent.end(),
            [](const FrequentItemset& a, const FrequentItemset& b) {
              return canonical_less(a.mask, b.mask);
            });

  if (options.collect_solid) result.solid = catalog.solid;

  stats.passes = 1.0 + static_cast<double>(stats.stops) / params.stop_max();
  stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

}  // namespace

MiningResult mine_serial(const BitDatabase& db, const MiningParams& params,
                         const EngineOptions& options) {
  return run(db, params, options, true);
}

MiningResult mine_parallel(const BitDatabase& db, const MiningParams& params,
                           const EngineOptions& options) {
  return run(db, params, options, false);
}

}  // namespace dicmine
