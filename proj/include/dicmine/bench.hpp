#pragma once

// Thread-scaling harness: speedup s(k) = t_1 / t_k and parallel efficiency
// e(k) = s(k) / k, with t_k the minimum wall time over repetitions.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "dicmine/bitcore.hpp"
#include "dicmine/dic.hpp"

namespace dicmine::bench {

struct ScalingRow {
  int threads = 1;
  double time_s = 0.0;
  double speedup = 1.0;
  double efficiency = 1.0;
};

struct ScalingMetadata {
  std::string dataset;
  std::size_t n = 0;
  unsigned m = 0;
  double minsup = 0.0;
  std::size_t interval = 0;
  int repetitions = 1;
  std::string timestamp;  // ISO-8601 UTC, filled by run_scaling
};

struct ScalingReport {
  std::vector<ScalingRow> rows;
  ScalingMetadata meta;
};

// ceil(n / 2); n itself when n < 2.
std::size_t default_interval(std::size_t n) noexcept;

// Rows from (threads, t_k) pairs. Requires a pair with threads == 1 and
// positive times; throws Error(InvalidParams) otherwise.
std::vector<ScalingRow> scaling_rows(const std::vector<std::pair<int, double>>& timings);

// Runs `mine(threads)` `repetitions` times per thread count and keeps the
// fastest time. Every run must return the same frequent itemsets or
// Error(CorrectnessFailure) is thrown before anything is reported.
using MineFn = std::function<MiningResult(int threads)>;
ScalingReport run_scaling(const MineFn& mine, const std::vector<int>& thread_counts,
                          int repetitions, ScalingMetadata meta);

// Convenience overload over mine_parallel.
ScalingReport run_scaling(const BitDatabase& db, double minsup, std::size_t interval,
                          const std::vector<int>& thread_counts, int repetitions,
                          std::string dataset = "unnamed");

// CSV columns: threads,time_s,speedup,efficiency
void write_csv(const ScalingReport& report, std::ostream& out);
// JSON object: dataset, n, m, minsup, M, repetitions, timestamp
void write_json(const ScalingReport& report, std::ostream& out);

// Distinct (physical id, core id) pairs from /proc/cpuinfo; falls back to
// std::thread::hardware_concurrency().
unsigned physical_core_count();

}  // namespace dicmine::bench
