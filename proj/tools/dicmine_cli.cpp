// dicmine: frequent itemset mining with Dynamic Itemset Counting.
//
//   dicmine mine     --input DB [--output FILE] [--minsup F] [--interval M]
//                    [--threads K] [--engine serial|parallel] [--format text|bin]
//   dicmine generate --output FILE [--n N] [--m M] [--avg-len L] [--seed S] [--skew R]
//   dicmine verify   --input DB [--minsup F] [--interval M] [--threads K] [--expected FILE]
//   dicmine bench    [--input DB | --n ...] --threads-list 1,2,4 [--reps R] [--output CSV]
//
// Failures print one line "error[CODE]: message" to stderr. Exit codes:
// 0 success, 1 runtime error, 2 usage error, 3 verification divergence.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "dicmine/bench.hpp"
#include "dicmine/dataio.hpp"
#include "dicmine/dic.hpp"
#include "dicmine/error.hpp"
#include "dicmine/kernels.hpp"
#include "dicmine/oracle.hpp"

namespace fs = std::filesystem;
using namespace dicmine;

namespace {

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDivergence = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CliConfig {
  std::string input;
  std::string output;
  double minsup = 0.1;
  std::optional<std::size_t> interval;
  std::optional<int> threads;
  std::vector<int> threads_list;
  std::string engine = "parallel";
  std::string format;
  std::string expected;
  dataio::DatasetSpec spec;
  int reps = 3;
};

int resolve_threads(const CliConfig& cfg) {
  if (cfg.threads) return *cfg.threads;
  if (const char* env = std::getenv("DICMINE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) {
      throw UsageError("DICMINE_THREADS must be a positive integer, got '" + std::string(env) + "'");
    }
    return static_cast<int>(v);
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

std::optional<dataio::DataFormat> parse_format(const std::string& f) {
  if (f.empty()) return std::nullopt;
  return f == "bin" ? dataio::DataFormat::Binary : dataio::DataFormat::Text;
}

MiningParams make_params(const CliConfig& cfg, const BitDatabase& db) {
  const std::size_t interval = cfg.interval ? *cfg.interval : bench::default_interval(db.size());
  return MiningParams::make(cfg.minsup, db.size(), interval, resolve_threads(cfg));
}

std::string itemset_line(Mask64 mask, std::uint64_t support) {
  std::string line;
  for (ItemId id : decode_items(mask)) {
    line += std::to_string(id);
    line.push_back(' ');
  }
  line += "(" + std::to_string(support) + ")";
  return line;
}

void write_frequent(const std::vector<FrequentItemset>& frequent, std::ostream& out) {
  for (const auto& f : frequent) out << itemset_line(f.mask, f.support) << '\n';
}

void print_stats(const BitDatabase& db, const MiningParams& params, const MiningResult& r,
                 const std::string& engine) {
  const auto& s = r.stats;
  std::cerr << "engine=" << engine << " isa=" << kernels::isa_name(kernels::active_isa())
            << " n=" << db.size() << " m=" << db.items() << " minsup_count=" << params.minsup_count()
            << " M=" << params.interval() << " stop_max=" << params.stop_max()
            << " threads=" << (engine == "serial" ? 1 : params.threads())
            << " frequent=" << r.frequent.size() << " passes=" << s.passes << " stops=" << s.stops
            << " peak_dashed=" << s.peak_dashed << " candidates=" << s.candidates_generated
            << " pruned=" << s.candidates_pruned << " time_s=" << s.wall_seconds << '\n';
}

int cmd_mine(const CliConfig& cfg) {
  const BitDatabase db = dataio::load_database(cfg.input, parse_format(cfg.format));
  const MiningParams params = make_params(cfg, db);
  const MiningResult result =
      cfg.engine == "serial" ? mine_serial(db, params) : mine_parallel(db, params);
  if (cfg.output.empty()) {
    write_frequent(result.frequent, std::cout);
  } else {
    std::ofstream out(cfg.output, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open for writing: " + cfg.output);
    write_frequent(result.frequent, out);
    if (!out.flush()) throw Error(ErrorCode::IoError, "write failed: " + cfg.output);
  }
  print_stats(db, params, result, cfg.engine);
  return 0;
}

int cmd_generate(const CliConfig& cfg) {
  const BitDatabase db = dataio::generate_synthetic(cfg.spec);
  dataio::DataFormat format = dataio::DataFormat::Text;
  if (!cfg.format.empty()) {
    format = *parse_format(cfg.format);
  } else {
    const auto ext = fs::path(cfg.output).extension();
    if (ext == ".bin" || ext == ".bdb") format = dataio::DataFormat::Binary;
  }
  dataio::save_database(db, cfg.output, format);

  std::uint64_t total = 0;
  std::vector<std::uint64_t> freq(db.items(), 0);
  for (Mask64 t : db.masks()) {
    total += static_cast<std::uint64_t>(cardinality(t));
    for (ItemId id : decode_items(t)) ++freq[id];
  }
  std::sort(freq.begin(), freq.end());
  const double n = static_cast<double>(db.size());
  std::cerr << "transactions=" << db.size() << " items=" << db.items()
            << " mean_length=" << static_cast<double>(total) / n
            << " item_freq_min=" << freq.front() / n << " item_freq_median=" << freq[freq.size() / 2] / n
            << " item_freq_max=" << freq.back() / n << '\n';
  return 0;
}

// Parses "i j k (s)" lines as written by `mine`.
std::map<Mask64, std::uint64_t> read_expected(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open for reading: " + path);
  std::map<Mask64, std::uint64_t> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto open = line.rfind('(');
    const auto close = line.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open) {
      throw Error(ErrorCode::ParseError, path + ": expected 'ids (support)' at line " + std::to_string(line_no));
    }
    std::istringstream ids(line.substr(0, open));
    std::vector<ItemId> items;
    long long id = 0;
    while (ids >> id) {
      if (id < 0) throw Error(ErrorCode::ItemOutOfRange, path + ": negative id at line " + std::to_string(line_no));
      items.push_back(static_cast<ItemId>(id));
    }
    if (!ids.eof()) throw Error(ErrorCode::ParseError, path + ": bad item id at line " + std::to_string(line_no));
    out[encode_transaction(items, line_no)] = std::stoull(line.substr(open + 1, close - open - 1));
  }
  return out;
}

// Describes the first difference between two canonical itemset lists.
std::optional<std::string> first_divergence(const std::map<Mask64, std::uint64_t>& a, const std::string& a_name,
                                            const std::map<Mask64, std::uint64_t>& b, const std::string& b_name) {
  std::vector<Mask64> masks;
  for (const auto& [mask, _] : a) masks.push_back(mask);
  for (const auto& [mask, _] : b) masks.push_back(mask);
  std::sort(masks.begin(), masks.end(), canonical_less);
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  auto describe = [](const std::map<Mask64, std::uint64_t>& m, Mask64 mask) {
    const auto it = m.find(mask);
    return it == m.end() ? std::string("absent") : "support " + std::to_string(it->second);
  };
  for (Mask64 mask : masks) {
    const auto ia = a.find(mask);
    const auto ib = b.find(mask);
    if (ia == a.end() || ib == b.end() || ia->second != ib->second) {
      std::string ids = itemset_line(mask, 0);
      ids.erase(ids.rfind(" ("));
      return "itemset {" + ids + "}: " + a_name + " " + describe(a, mask) + ", " + b_name + " " +
             describe(b, mask);
    }
  }
  return std::nullopt;
}

std::map<Mask64, std::uint64_t> as_map(const std::vector<FrequentItemset>& f) {
  std::map<Mask64, std::uint64_t> out;
  for (const auto& i : f) out[i.mask] = i.support;
  return out;
}

int cmd_verify(const CliConfig& cfg) {
  const BitDatabase db = dataio::load_database(cfg.input, parse_format(cfg.format));
  if (db.items() > oracle::kMaxOracleItems) {
    throw Error(ErrorCode::UniverseTooLarge,
                "verify enumerates all 2^m itemsets and needs m <= 20, input has m=" +
                    std::to_string(db.items()) + "; run 'mine' on it instead");
  }
  const MiningParams params = make_params(cfg, db);
  std::map<Mask64, std::uint64_t> brute;
  for (const auto& e : oracle::bruteforce_frequent(db, cfg.minsup).frequent) brute[e.mask] = e.support;
  const auto serial = as_map(mine_serial(db, params).frequent);
  const auto parallel = as_map(mine_parallel(db, params).frequent);

  std::vector<std::pair<std::string, std::map<Mask64, std::uint64_t>>> others = {
      {"serial", serial}, {"parallel", parallel}};
  if (!cfg.expected.empty()) others.emplace_back("expected", read_expected(cfg.expected));
  for (const auto& [name, result] : others) {
    if (auto diff = first_divergence(brute, "oracle", result, name)) {
      std::cout << "DIVERGENCE " << *diff << '\n';
      return kExitDivergence;
    }
  }
  std::cout << "OK " << brute.size() << " frequent itemsets agree (oracle, serial, parallel"
            << (cfg.expected.empty() ? "" : ", expected") << ")\n";
  return 0;
}

int cmd_bench(const CliConfig& cfg) {
  if (std::find(cfg.threads_list.begin(), cfg.threads_list.end(), 1) == cfg.threads_list.end()) {
    throw UsageError("--threads-list must include 1 (t_1 defines speedup)");
  }
  std::string dataset;
  BitDatabase db = [&] {
    if (!cfg.input.empty()) {
      dataset = fs::path(cfg.input).filename().string();
      return dataio::load_database(cfg.input, parse_format(cfg.format));
    }
    const auto& s = cfg.spec;
    dataset = "synthetic(n=" + std::to_string(s.n) + ",m=" + std::to_string(s.m) +
              ",avg_len=" + std::to_string(s.avg_len) + ",seed=" + std::to_string(s.seed) + ")";
    return dataio::generate_synthetic(s);
  }();
  const std::size_t interval = cfg.interval ? *cfg.interval : bench::default_interval(db.size());
  const auto report = bench::run_scaling(db, cfg.minsup, interval, cfg.threads_list, cfg.reps, dataset);

  const std::string csv_path = cfg.output.empty() ? "scaling.csv" : cfg.output;
  std::ofstream csv(csv_path, std::ios::trunc);
  if (!csv) throw Error(ErrorCode::IoError, "cannot open for writing: " + csv_path);
  bench::write_csv(report, csv);
  const fs::path json_path = fs::path(csv_path).replace_extension(".json");
  std::ofstream json(json_path, std::ios::trunc);
  if (!json) throw Error(ErrorCode::IoError, "cannot open for writing: " + json_path.string());
  bench::write_json(report, json);

  bench::write_csv(report, std::cout);
  return 0;
}

void add_mining_flags(CLI::App* cmd, CliConfig& cfg) {
  cmd->add_option("--minsup", cfg.minsup, "Minimum support fraction in (0, 1]")
      ->check(CLI::Range(0.0, 1.0))
      ->check(CLI::Validator([](std::string& v) { return std::stod(v) > 0.0 ? "" : "minsup must be > 0"; },
                             "(0,1]"));
  cmd->add_option("--interval", cfg.interval, "Transactions per stop (default ceil(n/2))")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--threads", cfg.threads, "Worker threads (default $DICMINE_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", cfg.format, "Input format (default: sniff)")
      ->check(CLI::IsMember({"text", "bin"}));
}

void add_spec_flags(CLI::App* cmd, CliConfig& cfg) {
  cmd->add_option("--n", cfg.spec.n, "Transactions")->check(CLI::PositiveNumber);
  cmd->add_option("--m", cfg.spec.m, "Items (<= 64)");
  cmd->add_option("--avg-len", cfg.spec.avg_len, "Mean transaction length");
  cmd->add_option("--seed", cfg.spec.seed, "RNG seed");
  cmd->add_option("--skew", cfg.spec.skew, "Popularity decay ratio in (0, 1]");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frequent itemset mining with Dynamic Itemset Counting over bitmask transactions"};
  app.require_subcommand(1);
  CliConfig cfg;

  auto* mine = app.add_subcommand("mine", "Mine frequent itemsets");
  mine->add_option("--input", cfg.input, "Transaction file (text or binary)")->required();
  mine->add_option("--output", cfg.output, "Output file (default stdout)");
  mine->add_option("--engine", cfg.engine, "serial or parallel")->check(CLI::IsMember({"serial", "parallel"}));
  add_mining_flags(mine, cfg);

  auto* generate = app.add_subcommand("generate", "Write a synthetic dataset");
  generate->add_option("--output", cfg.output, "Output file (.bin/.bdb for binary)")->required();
  generate->add_option("--format", cfg.format, "text or bin")->check(CLI::IsMember({"text", "bin"}));
  add_spec_flags(generate, cfg);

  auto* verify = app.add_subcommand("verify", "Cross-check oracle, serial and parallel engines");
  verify->add_option("--input", cfg.input, "Transaction file (m <= 20)")->required();
  verify->add_option("--expected", cfg.expected, "Expected 'mine' output to compare as well");
  add_mining_flags(verify, cfg);

  auto* bench_cmd = app.add_subcommand("bench", "Measure speedup and parallel efficiency");
  bench_cmd->add_option("--input", cfg.input, "Dataset (default: synthetic from spec flags)");
  bench_cmd->add_option("--output", cfg.output, "CSV report (JSON sidecar next to it)");
  bench_cmd->add_option("--threads-list", cfg.threads_list, "Comma-separated thread counts incl. 1")
      ->delimiter(',')
      ->required()
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--reps", cfg.reps, "Repetitions per thread count (min time kept)")
      ->check(CLI::PositiveNumber);
  add_mining_flags(bench_cmd, cfg);
  add_spec_flags(bench_cmd, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error[USAGE]: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*mine) return cmd_mine(cfg);
    if (*generate) return cmd_generate(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*bench_cmd) return cmd_bench(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error[USAGE]: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error[" << error_code_name(e.code()) << "]: " << e.what() << '\n';
    return e.code() == ErrorCode::InvalidParams ? kExitUsage : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error[INTERNAL]: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
