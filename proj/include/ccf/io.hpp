#pragma once

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "ccf/errors.hpp"

namespace ccf {

inline constexpr std::string_view kToolVersion = "1.0.0";

// Shortest round-trip decimal form; "inf"/"-inf"/"nan" for non-finite values.
inline std::string fmt_num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline std::string fmt_num(std::size_t x) { return std::to_string(x); }
inline std::string fmt_num(int x) { return std::to_string(x); }

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 0xf];
  return s;
}

// Builds a CSV document in memory; fields containing ',', '"' or newlines
// are quoted.
class CsvDocument {
public:
  explicit CsvDocument(std::vector<std::string> header) : width_(header.size()) { write_row(header); }

  template <class... Ts>
  void row(const Ts&... fields) {
    std::vector<std::string> cells{cell(fields)...};
    write_row(cells);
  }

  void row(const std::vector<std::string>& cells) { write_row(cells); }

  const std::string& str() const noexcept { return buf_; }

private:
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  static std::string cell(double x) { return fmt_num(x); }
  static std::string cell(int x) { return std::to_string(x); }
  static std::string cell(std::size_t x) { return std::to_string(x); }
  static std::string cell(bool b) { return b ? "true" : "false"; }

  void write_row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw std::logic_error("CSV row width does not match header");
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) buf_ += ',';
      const auto& c = cells[i];
      if (c.find_first_of(",\"\n") != std::string::npos) {
        buf_ += '"';
        for (char ch : c) {
          if (ch == '"') buf_ += '"';
          buf_ += ch;
        }
        buf_ += '"';
      } else {
        buf_ += c;
      }
    }
    buf_ += '\n';
  }

  std::size_t width_;
  std::string buf_;
};

// Write-to-temp-then-rename so readers never observe a partial file.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw std::runtime_error("cannot move '" + tmp.string() + "' into place: " + ec.message());
}

// UTC ISO-8601. Honors SOURCE_DATE_EPOCH so manifests can be made
// reproducible too.
inline std::string utc_timestamp() {
  std::time_t t = 0;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch)
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  else
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct OutputFile {
  std::string name;
  std::size_t bytes = 0;
  std::string fnv1a64;
};

// Collects every file a command writes under one directory.
class OutputDir {
public:
  explicit OutputDir(std::filesystem::path root) : root_(std::move(root)) {}

  const std::filesystem::path& root() const noexcept { return root_; }

  void write(const std::string& name, std::string_view contents) {
    const auto path = root_ / name;
    std::filesystem::create_directories(path.parent_path());
    write_file_atomic(path, contents);
    files_.push_back({name, contents.size(), hex64(fnv1a64(contents))});
  }

  void write(const std::string& name, const CsvDocument& doc) { write(name, doc.str()); }

  const std::vector<OutputFile>& files() const noexcept { return files_; }

private:
  std::filesystem::path root_;
  std::vector<OutputFile> files_;
};

}  // namespace ccf
