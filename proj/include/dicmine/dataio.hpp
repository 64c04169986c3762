#pragma once

// Dataset ingestion and caching.
//
// Text format: one transaction per line, whitespace-separated base-10 item
// ids in [0, 63]. Blank lines are skipped and lines whose first non-blank
// character is '#' are comments.
//
// Binary format (all integers little-endian):
//   8 bytes  magic "DICBDB01"
//   u8       version (1)
//   u64      n
//   u16      m
//   n * u64  transaction masks

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "dicmine/bitcore.hpp"

namespace dicmine::dataio {

inline constexpr std::string_view kBinaryMagic = "DICBDB01";
inline constexpr std::uint8_t kBinaryVersion = 1;

struct TextLoad {
  BitDatabase db;
  std::size_t duplicates = 0;  // repeated ids collapsed within a transaction
};

TextLoad parse_transactions(std::istream& in);
TextLoad load_transactions(const std::filesystem::path& path);

// Canonical text: ascending ids, single spaces, '\n' per transaction. An
// empty transaction becomes an empty line, which the reader skips.
void write_transactions(const BitDatabase& db, std::ostream& out);
void write_transactions(const BitDatabase& db, const std::filesystem::path& path);

void save_bitdb(const BitDatabase& db, std::ostream& out);
void save_bitdb(const BitDatabase& db, const std::filesystem::path& path);
BitDatabase load_bitdb(std::istream& in);
BitDatabase load_bitdb(const std::filesystem::path& path);

enum class DataFormat { Text, Binary };

// Magic bytes win, then the extension (.bin / .bdb), else text.
DataFormat sniff_format(const std::filesystem::path& path);

BitDatabase load_database(const std::filesystem::path& path,
                          std::optional<DataFormat> format = std::nullopt);
void save_database(const BitDatabase& db, const std::filesystem::path& path, DataFormat format);

// --- Synthetic data ---------------------------------------------------------

struct DatasetSpec {
  std::size_t n = 10000;
  unsigned m = 64;
  double avg_len = 40.0;
  std::uint64_t seed = 42;
  // Geometric decay ratio in (0, 1] of item popularity and pattern weight by
  // rank; 1 is uniform.
  double skew = 0.9;
};

// Throws Error(SpecError) unless n >= 1, 1 <= m <= 64, 1 <= avg_len <= m,
// 0 < skew <= 1.
void validate(const DatasetSpec& spec);

// Quest-style market-basket generator. A seeded pool of weighted patterns
// (overlapping item groups) is sampled until each transaction reaches its
// target length, so frequent itemsets form a multi-level lattice. Output is
// a pure function of the spec: mt19937_64 seeded with spec.seed, integer
// arithmetic for every sampling decision.
BitDatabase generate_synthetic(const DatasetSpec& spec);

}  // namespace dicmine::dataio
