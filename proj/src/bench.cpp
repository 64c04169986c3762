#include "dicmine/bench.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "dicmine/error.hpp"

namespace dicmine::bench {

std::size_t default_interval(std::size_t n) noexcept { return n < 2 ? n : (n + 1) / 2; }

std::vector<ScalingRow> scaling_rows(const std::vector<std::pair<int, double>>& timings) {
  const auto base = std::find_if(timings.begin(), timings.end(),
                                 [](const auto& t) { return t.first == 1; });
  if (base == timings.end()) {
    throw Error(ErrorCode::InvalidParams, "thread counts must include 1 to define t_1");
  }
  const double t1 = base->second;
  std::vector<ScalingRow> rows;
  for (const auto& [k, tk] : timings) {
    if (k < 1 || !(tk > 0.0)) {
      throw Error(ErrorCode::InvalidParams, "invalid timing for k=" + std::to_string(k));
    }
    const double s = t1 / tk;
    rows.push_back(ScalingRow{k, tk, s, s / k});
  }
  return rows;
}

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

}  // namespace

ScalingReport run_scaling(const MineFn& mine, const std::vector<int>& thread_counts,
                          int repetitions, ScalingMetadata meta) {
  if (repetitions < 1) throw Error(ErrorCode::InvalidParams, "repetitions must be >= 1");
  if (std::find(thread_counts.begin(), thread_counts.end(), 1) == thread_counts.end()) {
    throw Error(ErrorCode::InvalidParams, "thread counts must include 1 to define t_1");
  }

  std::vector<FrequentItemset> reference;
  bool have_reference = false;
  std::vector<std::pair<int, double>> timings;
  for (int k : thread_counts) {
    double best = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < repetitions; ++rep) {
      const auto started = std::chrono::steady_clock::now();
      MiningResult result = mine(k);
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
      if (!have_reference) {
        reference = std::move(result.frequent);
        have_reference = true;
      } else if (result.frequent != reference) {
        throw Error(ErrorCode::CorrectnessFailure,
                    "run with " + std::to_string(k) + " threads (repetition " +
                        std::to_string(rep + 1) + ") returned a different frequent-itemset set");
      }
      best = std::min(best, std::max(elapsed, 1e-9));
    }
    timings.emplace_back(k, best);
  }

  meta.repetitions = repetitions;
  meta.timestamp = utc_timestamp();
  return ScalingReport{scaling_rows(timings), std::move(meta)};
}

ScalingReport run_scaling(const BitDatabase& db, double minsup, std::size_t interval,
                          const std::vector<int>& thread_counts, int repetitions,
                          std::string dataset) {
  const auto base = MiningParams::make(minsup, db.size(), interval, 1);
  ScalingMetadata meta{std::move(dataset), db.size(), db.items(), minsup, interval, repetitions, {}};
  return run_scaling(
      [&](int threads) { return mine_parallel(db, base.with_threads(threads)); }, thread_counts,
      repetitions, std::move(meta));
}

void write_csv(const ScalingReport& report, std::ostream& out) {
  out << "threads,time_s,speedup,efficiency\n";
  out << std::setprecision(17);
  for (const auto& r : report.rows) {
    out << r.threads << ',' << r.time_s << ',' << r.speedup << ',' << r.efficiency << '\n';
  }
}

void write_json(const ScalingReport& report, std::ostream& out) {
  const auto& m = report.meta;
  nlohmann::json j = {
      {"dataset", m.dataset},       {"n", m.n},
      {"m", m.m},                   {"minsup", m.minsup},
      {"M", m.interval},            {"repetitions", m.repetitions},
      {"timestamp", m.timestamp},
  };
  out << j.dump(2) << '\n';
}

unsigned physical_core_count() {
  std::ifstream in("/proc/cpuinfo");
  std::set<std::pair<std::string, std::string>> cores;
  std::string line, physical = "0";
  while (std::getline(in, line)) {
    const auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::string key = line.substr(0, colon);
    key.erase(key.find_last_not_of(" \t") + 1);
    const std::string value = colon + 2 <= line.size() ? line.substr(colon + 2) : "";
    if (key == "physical id") physical = value;
    if (key == "core id") cores.emplace(physical, value);
  }
  if (!cores.empty()) return static_cast<unsigned>(cores.size());
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace dicmine::bench
