// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

// nlk: command-line front end over the C interface.

#include <CLI11.hpp>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "nlk/nlk.h"

namespace {

using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

int exit_code(nlk_status st) {
  switch (st) {
    case NLK_OK: return kExitOk;
    case NLK_INVALID_ARGUMENT:
    case NLK_DOMAIN:
    case NLK_PRECONDITION:
    case NLK_NOT_IN_UK:
    case NLK_TAIL_DIVERGENT:
    case NLK_UNSUPPORTED_ORDER: return kExitValidation;
    default: return kExitNumerical;
  }
}

int report(nlk_status st) {
  if (st != NLK_OK) std::cerr << "nlk: error [" << nlk_status_name(st) << "]: " << nlk_last_error() << "\n";
  return exit_code(st);
}

struct Options {
  std::string config;
  std::string out = "nlk-out";
  std::int64_t seed = -1;
};

int run(const std::string& command, const Options& o) {
  std::ifstream in(o.config);
  if (!in) {
    std::cerr << "nlk: error: cannot read config file '" << o.config << "'\n";
    return kExitValidation;
  }
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::exception& e) {
    std::cerr << "nlk: error: " << o.config << " is not valid JSON: " << e.what() << "\n";
    return kExitValidation;
  }
  if (!cfg.is_object()) {
    std::cerr << "nlk: error: config must be a JSON object\n";
    return kExitValidation;
  }
  if (o.seed >= 0) cfg["seed"] = o.seed;
  char* summary = nullptr;
  const nlk_status st = nlk_run_command(command.c_str(), cfg.dump().c_str(), o.out.c_str(), &summary);
  if (st == NLK_OK) {
    std::cout << summary << "\n";
    nlk_string_free(summary);
  }
  return report(st);
}

void print_criterion(int, int, int, const char* line, void*) {
  std::cout << line << std::endl;
}

int selftest(const std::vector<int>& ids) {
  const nlk_status st = nlk_selftest(ids.data(), ids.size(), print_criterion, nullptr, nullptr);
  std::cout << (st == NLK_OK ? "SELFTEST PASSED" : "SELFTEST FAILED") << "\n";
  if (st == NLK_CHECK_FAILED) return kExitNumerical;
  return report(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nonlocal-kit: fractional Laplacians of polynomially growing functions"};
  app.set_version_flag("--version", std::string(nlk_version()));
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  int threads_flag = 0;
  app.add_option("--threads", threads_flag, "worker threads (default: NONLOCAL_KIT_THREADS, then 1)")
      ->check(CLI::PositiveNumber);

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"eval", "classical and divergent operator on a grid"},
      {"convergence", "truncated operator as the cut-off radius grows"},
      {"solve", "Dirichlet problem on a ball"},
      {"multiplicity", "kernel of the divergent Dirichlet problem"},
      {"shadow", "harmonic approximation of a function on the unit ball"},
      {"nonlinear-shadow", "approximation for a nonlinear right-hand side"},
      {"oracle", "Monte Carlo estimate of a Dirichlet solution"},
  };
  std::string chosen;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", o.config, "JSON configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "output directory")->capture_default_str();
    sub->add_option("--seed", o.seed, "random seed, overrides the config")->check(CLI::NonNegativeNumber);
    sub->callback([&chosen, n = name] { chosen = n; });
  }
  std::vector<int> ids;
  CLI::App* st = app.add_subcommand("selftest", "run the acceptance criteria");
  st->add_option("ids", ids, "criteria to run (default: all)");
  st->callback([&chosen] { chosen = "selftest"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  int threads = threads_flag;
  if (threads == 0) {
    if (const char* env = std::getenv("NONLOCAL_KIT_THREADS")) threads = std::atoi(env);
  }
  if (threads > 0) {
    if (const int rc = report(nlk_set_threads(threads)); rc != 0) return rc;
  }
  if (chosen == "selftest") return selftest(ids);
  return run(chosen, o);
}
