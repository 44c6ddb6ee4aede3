// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "nlk/commands.hpp"
#include "nlk/config.hpp"
#include "nlk/error.hpp"

using namespace nlk;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return static_cast<ErrorCode>(0);
}

std::string first_line(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::string line;
  std::getline(f, line);
  return line;
}

}  // namespace

TEST_CASE("params and quadrature round trip") {
  const FracParams p = params_from_json(json{{"n", 2}, {"s", 0.25}, {"k", 3}, {"normalized", true}});
  CHECK(p.n == 2);
  CHECK(p.s == 0.25);
  CHECK(p.k == 3);
  CHECK(p.normalized);
  CHECK(to_json(p) == json{{"n", 2}, {"s", 0.25}, {"k", 3}, {"normalized", true}});
  const QuadratureConfig q = quadrature_from_json(json{{"rel_tol", 1e-6}});
  CHECK(q.rel_tol == 1e-6);
  CHECK(quadrature_from_json(to_json(q)).abs_tol == q.abs_tol);
}

TEST_CASE("unknown keys and bad values are rejected") {
  CHECK(code_of([] { params_from_json(json{{"n", 1}, {"sigma", 0.5}}); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { params_from_json(json{{"n", 1}, {"s", "half"}}); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { params_from_json(json{{"n", 4}}); }) != static_cast<ErrorCode>(0));
  CHECK(code_of([] { params_from_json(json{{"s", 1.0}}); }) != static_cast<ErrorCode>(0));
  CHECK(code_of([] { quadrature_from_json(json{{"tol", 1e-6}}); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { function_from_json(json{{"type", "monomial"}, {"exponents", {2}}, {"scale", 1}}, 1, 0.5); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(code_of([] { function_from_json(json{{"type", "cosine"}}, 1, 0.5); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { function_from_json(json{{"type", "monomial"}, {"exponents", {2, 1}}}, 1, 0.5); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(code_of([] { shadow_config_from_json(json{{"pole", 8}}); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { mc_config_from_json(json{{"samples", 10}}, 1); }) != static_cast<ErrorCode>(0));
  CHECK(code_of([] { nonlinearity_from_json(json{{"type", "sin-composite"}, {"coefs", {1, 2, 3, 4}}}, 1, 0); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("function specs evaluate") {
  CHECK(function_from_json(json{{"type", "monomial"}, {"exponents", {2, 1}}, {"coef", 3}}, 2, 0.5)({2, 5, 0}) ==
        60.0);
  const json poly = {{"type", "polynomial"},
                     {"terms", {{{"exponents", {0}}, {"coef", 1}}, {{"exponents", {3}}, {"coef", -2}}}}};
  CHECK(function_from_json(poly, 1, 0.5)({2, 0, 0}) == -15.0);
  const json sum = {{"type", "sum"},
                    {"terms",
                     {{{"coef", 2}, {"function", {{"type", "constant"}, {"value", 1.5}}}},
                      {{"function", {{"type", "annulus-indicator"}, {"inner", 1}, {"outer", 2}}}}}}};
  CHECK(function_from_json(sum, 3, 0.5)({0, 1.5, 0}) == 4.0);
  CHECK(function_from_json(json{{"type", "getoor-profile"}}, 1, 0.5)({0.6, 0, 0}) == doctest::Approx(0.8));
}

TEST_CASE("default nonlinearity reads the u slot") {
  const Nonlinearity F = nonlinearity_from_json(json{{"type", "sin-composite"}}, 2, 1);
  const std::vector<double> z = {9.0, 9.0, 0.5, 9.0, 9.0};
  CHECK(F.eval(z) == doctest::Approx(std::sin(0.5)));
}

TEST_CASE("config hash") {
  const json a = json::parse(R"({"params": {"n": 1, "s": 0.5}, "seed": 1})");
  const json b = json::parse(R"({"seed": 1, "params": {"s": 0.5, "n": 1}})");
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a).size() == 16);
  CHECK(config_hash(a) != config_hash(json::parse(R"({"params": {"n": 1, "s": 0.5}, "seed": 2})")));
}

TEST_CASE("commands write headed artifacts") {
  const auto dir = std::filesystem::temp_directory_path() / "nlk_test_config_eval";
  std::filesystem::remove_all(dir);
  const json cfg = json::parse(R"({"params": {"n": 1, "s": 0.5, "k": 2},
      "function": {"type": "monomial", "exponents": [2]}, "eval": {"points": [[0.3], [-0.2]]}})");
  const CommandOutput out = run_command("eval", cfg, dir.string());
  REQUIRE(out.files.size() == 2);
  CHECK(first_line(dir / "eval.csv") == "# nonlocal-kit " NLK_VERSION " config-hash " + config_hash(cfg) + " command eval");
  CHECK(out.summary["points"] == 2);
  CHECK(json::parse(std::ifstream(dir / "eval.json"))["meta"]["config_hash"] == config_hash(cfg));
  // Same config, same bytes.
  std::ifstream f1(dir / "eval.csv");
  const std::string first((std::istreambuf_iterator<char>(f1)), {});
  run_command("eval", cfg, dir.string());
  std::ifstream f2(dir / "eval.csv");
  CHECK(std::string((std::istreambuf_iterator<char>(f2)), {}) == first);

  CHECK(code_of([&] { run_command("eval", json::parse(R"({"extra": 1})"), dir.string()); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(code_of([&] { run_command("plot", json::object(), dir.string()); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([&] {
          run_command("eval", json::parse(R"({"params": {"n": 1, "s": 0.5, "k": 1},
              "function": {"type": "monomial", "exponents": [2]}})"),
                      dir.string());
        }) == ErrorCode::kNotInUk);
  std::filesystem::remove_all(dir);
}
