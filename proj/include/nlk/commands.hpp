// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Subcommands of the command-line tool, run on a parsed JSON configuration.
// Each writes CSV/JSON (and for 1-D shadows, SVG) artifacts into an output
// directory; every file starts with the library version and config hash.

#include <string>
#include <vector>

#include "nlk/config.hpp"

namespace nlk {

struct CommandOutput {
  json summary;
  std::vector<std::string> files;
};

/// eval, convergence, solve, multiplicity, shadow, nonlinear-shadow, oracle.
const std::vector<std::string>& command_names();

/// Validates the configuration (unknown keys are errors), runs the command
/// and writes its artifacts into out_dir, which is created if needed.
CommandOutput run_command(const std::string& name, const json& config, const std::string& out_dir);

}  // namespace nlk
