// Copyright (c) 2026 oscmult contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "oscmult/grid.hpp"

namespace oscmult {

// Thrown for malformed configs; the message carries the offending field path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentResult {
  std::string experiment;
  nlohmann::json resolved;  // full config after defaults, echoed as the manifest
  std::string csv;
  nlohmann::json summary;  // {experiment, params, metrics, pass}
  bool pass = true;
  std::optional<SampledFunction> kernel;  // set when the run produces a dumpable kernel
};

// Validates the config (seed mandatory, unknown fields rejected with their
// paths) and runs the named experiment. Deterministic for a fixed config.
ExperimentResult run_experiment(const nlohmann::json& config);

// Writes whatever paths config.output names: csv, summary, manifest, kernel.
void write_artifacts(const ExperimentResult& result);

// name -> one-line description, in CLI listing order
const std::vector<std::pair<std::string, std::string>>& experiment_catalog();

// One verification-battery criterion: a named check with a headline number.
struct CriterionResult {
  int index = 0;
  std::string name;
  double measured = 0.0;
  std::string detail;  // human-readable summary including thresholds
  bool pass = false;
  double seconds = 0.0;
};

// The full acceptance battery, fixed seeds, deterministic.
std::vector<CriterionResult> acceptance_battery();

}  // namespace oscmult
