// Rectangular numeric series with run metadata, and the deterministic CSV
// and JSON writers used by the command-line runner. Floats render with 17
// significant digits, locale independent, '\n' line endings.
#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "symdeg/types.hpp"

namespace symdeg {

const char* artifact_version();

struct ScanSeries {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::string config_json;  // canonical effective config; may be empty
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::string version = artifact_version();

  void append_row(std::vector<double> row);
};

std::string format_double(double x);
std::uint64_t fnv1a_hash(std::string_view s);

void write_csv(const ScanSeries& series, std::ostream& os);
void write_json(const ScanSeries& series, std::ostream& os);

}  // namespace symdeg
