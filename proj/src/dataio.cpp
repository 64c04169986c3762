#include "dicmine/dataio.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "dicmine/error.hpp"

namespace dicmine::dataio {

namespace fs = std::filesystem;

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

[[noreturn]] void io_error(const fs::path& path, std::string_view what) {
  throw Error(ErrorCode::IoError, std::string(what) + ": " + path.string());
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_error(path, "cannot open for reading");
  return in;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) io_error(path, "cannot open for writing");
  return out;
}

template <typename T>
void put_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t b = 0; b < sizeof(T); ++b) {
    bytes[b] = static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * b)) & 0xFF);
  }
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T get_le(std::istream& in, std::string_view field) {
  std::array<unsigned char, sizeof(T)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (in.gcount() != static_cast<std::streamsize>(bytes.size())) {
    throw Error(ErrorCode::FormatError, "truncated binary database while reading " + std::string(field));
  }
  std::uint64_t v = 0;
  for (std::size_t b = 0; b < sizeof(T); ++b) v |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
  return static_cast<T>(v);
}

template <typename Fn>
auto with_path_context(const fs::path& path, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace

TextLoad parse_transactions(std::istream& in) {
  std::vector<Mask64> masks;
  std::vector<ItemId> items;
  std::size_t duplicates = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t pos = 0;
    while (pos < line.size() && is_blank(line[pos])) ++pos;
    if (pos == line.size() || line[pos] == '#') continue;

    items.clear();
    while (pos < line.size()) {
      while (pos < line.size() && is_blank(line[pos])) ++pos;
      if (pos == line.size()) break;
      std::size_t end = pos;
      while (end < line.size() && !is_blank(line[end])) ++end;
      const char* first = line.data() + pos;
      const char* last = line.data() + end;
      long long value = 0;
      const auto [ptr, ec] = std::from_chars(first, last, value);
      const std::string token(first, last);
      if (ec == std::errc::result_out_of_range ||
          (ec == std::errc{} && ptr == last && (value < 0 || value >= kMaxItems))) {
        throw Error(ErrorCode::ItemOutOfRange,
                    "item id " + token + " is outside [0, 63] at line " + std::to_string(line_no));
      }
      if (ec != std::errc{} || ptr != last) {
        throw Error(ErrorCode::ParseError,
                    "expected an integer item id, got '" + token + "' at line " + std::to_string(line_no));
      }
      items.push_back(static_cast<ItemId>(value));
      pos = end;
    }
    const Mask64 mask = encode_transaction(items, line_no);
    duplicates += items.size() - static_cast<std::size_t>(cardinality(mask));
    masks.push_back(mask);
  }
  if (masks.empty()) throw Error(ErrorCode::EmptyDatabase, "no transactions found");
  return TextLoad{BitDatabase(std::move(masks)), duplicates};
}

TextLoad load_transactions(const fs::path& path) {
  auto in = open_in(path);
  return with_path_context(path, [&] { return parse_transactions(in); });
}

void write_transactions(const BitDatabase& db, std::ostream& out) {
  std::string line;
  for (Mask64 t : db.masks()) {
    line.clear();
    for (ItemId id : decode_items(t)) {
      if (!line.empty()) line.push_back(' ');
      line += std::to_string(id);
    }
    line.push_back('\n');
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
  }
}

void write_transactions(const BitDatabase& db, const fs::path& path) {
  auto out = open_out(path);
  write_transactions(db, out);
  if (!out.flush()) io_error(path, "write failed");
}

void save_bitdb(const BitDatabase& db, std::ostream& out) {
  out.write(kBinaryMagic.data(), static_cast<std::streamsize>(kBinaryMagic.size()));
  put_le<std::uint8_t>(out, kBinaryVersion);
  put_le<std::uint64_t>(out, db.size());
  put_le<std::uint16_t>(out, static_cast<std::uint16_t>(db.items()));
  for (Mask64 t : db.masks()) put_le<std::uint64_t>(out, t);
}

void save_bitdb(const BitDatabase& db, const fs::path& path) {
  auto out = open_out(path);
  save_bitdb(db, out);
  if (!out.flush()) io_error(path, "write failed");
}

BitDatabase load_bitdb(std::istream& in) {
  std::array<char, kBinaryMagic.size()> magic{};
  in.read(magic.data(), magic.size());
  if (in.gcount() != static_cast<std::streamsize>(magic.size()) ||
      std::string_view(magic.data(), magic.size()) != kBinaryMagic) {
    throw Error(ErrorCode::FormatError, "missing DICBDB01 magic");
  }
  const auto version = get_le<std::uint8_t>(in, "version");
  if (version != kBinaryVersion) {
    throw Error(ErrorCode::FormatError, "unsupported binary version " + std::to_string(version));
  }
  const auto n = get_le<std::uint64_t>(in, "n");
  const auto m = get_le<std::uint16_t>(in, "m");
  if (n == 0) throw Error(ErrorCode::FormatError, "binary database declares n=0");
  if (m > kMaxItems) throw Error(ErrorCode::FormatError, "binary database declares m=" + std::to_string(m));

  std::vector<Mask64> masks;
  // Grow as we read so a corrupt n cannot force a huge allocation up front.
  masks.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(n, std::uint64_t{1} << 20)));
  for (std::uint64_t j = 0; j < n; ++j) masks.push_back(get_le<std::uint64_t>(in, "transactions"));
  if (in.peek() != std::char_traits<char>::eof()) {
    throw Error(ErrorCode::FormatError, "trailing bytes after " + std::to_string(n) + " transactions");
  }
  try {
    return BitDatabase(std::move(masks), m);
  } catch (const Error& e) {
    throw Error(ErrorCode::FormatError, e.what());
  }
}

BitDatabase load_bitdb(const fs::path& path) {
  auto in = open_in(path);
  return with_path_context(path, [&] { return load_bitdb(in); });
}

DataFormat sniff_format(const fs::path& path) {
  auto in = open_in(path);
  std::array<char, kBinaryMagic.size()> head{};
  in.read(head.data(), head.size());
  if (in.gcount() == static_cast<std::streamsize>(head.size()) &&
      std::string_view(head.data(), head.size()) == kBinaryMagic) {
    return DataFormat::Binary;
  }
  const auto ext = path.extension().string();
  if (ext == ".bin" || ext == ".bdb") return DataFormat::Binary;
  return DataFormat::Text;
}

BitDatabase load_database(const fs::path& path, std::optional<DataFormat> format) {
  const DataFormat f = format ? *format : sniff_format(path);
  return f == DataFormat::Binary ? load_bitdb(path) : load_transactions(path).db;
}

void save_database(const BitDatabase& db, const fs::path& path, DataFormat format) {
  if (format == DataFormat::Binary) {
    save_bitdb(db, path);
  } else {
    write_transactions(db, path);
  }
}

}  // namespace dicmine::dataio
