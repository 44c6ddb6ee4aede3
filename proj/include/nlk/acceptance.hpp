// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// The acceptance suite: eleven end-to-end checks with pinned configurations
// and tolerances, shared by the acceptance test binary and `nlk selftest`.

#include <functional>
#include <string>
#include <vector>

namespace nlk {

struct CriterionResult {
  int id = 0;
  std::string name;
  /// Non-gating criteria are reported but never fail the suite.
  bool gating = true;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double time_limit = 0.0;
};

struct AcceptanceOptions {
  /// Criteria to run; empty means all.
  std::vector<int> only;
  /// Called after each criterion finishes.
  std::function<void(const CriterionResult&)> on_result;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

/// "PASS  3 k0-consistency  (1.2 s / 120 s)  detail"
std::string format_result(const CriterionResult& r);

/// True when every gating criterion passed.
bool all_gating_passed(const std::vector<CriterionResult>& results);

}  // namespace nlk
