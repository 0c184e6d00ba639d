#include "symdeg/series.hpp"

#include <charconv>
#include <cmath>

#include <json.hpp>

namespace symdeg {

const char* artifact_version() { return "0.1.0"; }

void ScanSeries::append_row(std::vector<double> row) {
  if (row.size() != columns.size())
    throw InvalidInput("ScanSeries: row width does not match the header");
  rows.push_back(std::move(row));
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a_hash(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace {

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  static const char* digits = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = digits[h & 0xf];
    h >>= 4;
  }
  buf[16] = '\0';
  return buf;
}

}  // namespace

void write_csv(const ScanSeries& series, std::ostream& os) {
  os << "# symdeg " << series.version << "\n";
  os << "# config_hash: " << hash_hex(series.config_hash) << "\n";
  os << "# seed: " << series.seed << "\n";
  if (!series.config_json.empty()) os << "# config: " << series.config_json << "\n";
  for (std::size_t c = 0; c < series.columns.size(); ++c) {
    if (c) os << ',';
    os << series.columns[c];
  }
  os << '\n';
  for (const auto& row : series.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ',';
      os << format_double(row[c]);
    }
    os << '\n';
  }
}

void write_json(const ScanSeries& series, std::ostream& os) {
  nlohmann::json j;
  j["version"] = series.version;
  j["config_hash"] = hash_hex(series.config_hash);
  j["seed"] = series.seed;
  if (!series.config_json.empty())
    j["config"] = nlohmann::json::parse(series.config_json);
  j["columns"] = series.columns;
  auto rows = nlohmann::json::array();
  for (const auto& row : series.rows) {
    auto r = nlohmann::json::array();
    for (double x : row) r.push_back(x);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  os << j.dump(2) << '\n';
}

}  // namespace symdeg
