// The full property and constants suite behind the `validate` subcommand:
// measure bounds and invariances, the twirl and completeness-relation
// identities, every model constant, the thermal-state witness, and the
// oracle cross-checks, each emitted as a pass/fail report.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symdeg/oracle.hpp"

namespace symdeg {

struct ValidationOptions {
  int samples = 20000;
  std::uint64_t seed = 0;
  // Test hook: perturbs the candidate value of the named report so the
  // failure path stays exercised.
  std::optional<std::string> inject_fault;
};

std::vector<oracle::OracleReport> run_validation_suite(const ValidationOptions& options = {});

}  // namespace symdeg
