// Config-driven scenario runner behind the command line: strict JSON config
// parsing, model/ensemble wiring, task execution, and deterministic output
// files. Identical config and seed produce byte-identical files.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "symdeg/oracle.hpp"
#include "symdeg/types.hpp"

namespace symdeg {

// Config-level problems: unparseable files, unknown keys, bad grids,
// missing referenced files, incompatible model/group pairings. Exit code 2.
struct ConfigError : Error {
  using Error::Error;
};

struct GridSpec {
  double min = 0;
  double max = 1;
  int steps = 2;

  std::vector<double> points() const;
};

struct ModelSpec {
  std::string type = "four_site";
  double eps = 0;
  double h = 1;
  double delta0 = 0;
  double delta1 = 1;
  int j = 1;
  std::string h_file;
  std::string v_file;
};

struct GroupSpecConfig {
  std::string type = "Td4";
  int samples = 20000;
  std::uint64_t seed = 0;
  std::optional<double> at_lambda;  // anchor for the U2_extended ensemble
};

struct ScenarioConfig {
  std::string task = "compute";
  ModelSpec model;
  GroupSpecConfig group;
  GridSpec lambda{-6, 6, 121};
  GridSpec beta{0, 25, 5};
  std::string method = "auto";
  double lambda0 = 0;
  std::string out = "out.csv";
  std::string format = "csv";
  std::uint64_t seed = 0;
  int samples = 20000;
  double witness_tol = 0.01;
  std::optional<std::string> inject_fault;  // validate-only test hook (CLI flag)

  // Fully resolved config; re-parsing it yields an equivalent config.
  nlohmann::json effective() const;
};

struct CliOverrides {
  std::optional<std::string> task;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::optional<std::string> inject_fault;
};

ScenarioConfig parse_scenario_config(const nlohmann::json& j, const CliOverrides& overrides = {});
ScenarioConfig load_scenario_config(const std::string& path, const CliOverrides& overrides = {});

// Matrix file format used by "custom" models: JSON nested arrays of
// [re, im] pairs, row-major; Hermiticity is validated on load.
SquareOperator load_matrix_file(const std::string& path);

struct RunOutcome {
  std::vector<std::string> files_written;
  std::string witness_json;  // ssb_surface task
  std::vector<oracle::OracleReport> reports;  // validate task
  bool validation_failed = false;
};

RunOutcome run_scenario(const ScenarioConfig& config);

// 0 success, 1 validation failure, 2 config, 3 numeric, 4 regime.
int run_scenario_cli(const ScenarioConfig& config, std::ostream& out_stream,
                     std::ostream& err_stream);

}  // namespace symdeg
