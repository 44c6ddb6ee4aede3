// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlk/config.hpp"

#include <cinttypes>
#include <cstdio>

#include "nlk/error.hpp"

namespace nlk {

namespace {

template <class T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    fail(ErrorCode::kInvalidArgument, where + "." + key + " has the wrong type");
  }
}

template <class T>
T get_req(const json& j, const char* key, const std::string& where) {
  require(j.contains(key), ErrorCode::kInvalidArgument, where + ": missing required key '" + key + "'");
  return get_or<T>(j, key, T{}, where);
}

Point point_from(const json& j, int n, const std::string& where) {
  require(j.is_array() && static_cast<int>(j.size()) == n, ErrorCode::kInvalidArgument,
          where + " must be an array of " + std::to_string(n) + " numbers");
  Point p{};
  for (int i = 0; i < n; ++i) {
    require(j[static_cast<std::size_t>(i)].is_number(), ErrorCode::kInvalidArgument, where + " must hold numbers");
    p[static_cast<std::size_t>(i)] = j[static_cast<std::size_t>(i)].get<double>();
  }
  return p;
}

MultiIndex index_from(const json& j, int n, const std::string& where) {
  require(j.is_array() && static_cast<int>(j.size()) == n, ErrorCode::kInvalidArgument,
          where + " must be an array of " + std::to_string(n) + " exponents");
  std::array<int, kMaxDim> c{};
  for (int i = 0; i < n; ++i) {
    require(j[static_cast<std::size_t>(i)].is_number_integer(), ErrorCode::kInvalidArgument,
            where + " must hold integers");
    c[static_cast<std::size_t>(i)] = j[static_cast<std::size_t>(i)].get<int>();
  }
  return MultiIndex(n, c);
}

}  // namespace

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  require(obj.is_object(), ErrorCode::kInvalidArgument, where + " must be a JSON object");
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || item.key() == a;
    require(ok, ErrorCode::kInvalidArgument, where + ": unknown key '" + item.key() + "'");
  }
}

FracParams params_from_json(const json& j) {
  const std::string w = "params";
  check_keys(j, {"n", "s", "k", "normalized"}, w);
  FracParams p;
  p.n = get_or<int>(j, "n", p.n, w);
  p.s = get_or<double>(j, "s", p.s, w);
  p.k = get_or<int>(j, "k", p.k, w);
  p.normalized = get_or<bool>(j, "normalized", p.normalized, w);
  p.validate();
  return p;
}

json to_json(const FracParams& p) { return {{"n", p.n}, {"s", p.s}, {"k", p.k}, {"normalized", p.normalized}}; }

QuadratureConfig quadrature_from_json(const json& j) {
  const std::string w = "quadrature";
  check_keys(j, {"rel_tol", "abs_tol", "max_subdivisions", "split_radius", "tail_cut"}, w);
  QuadratureConfig c;
  c.rel_tol = get_or<double>(j, "rel_tol", c.rel_tol, w);
  c.abs_tol = get_or<double>(j, "abs_tol", c.abs_tol, w);
  c.max_subdivisions = get_or<int>(j, "max_subdivisions", c.max_subdivisions, w);
  c.split_radius = get_or<double>(j, "split_radius", c.split_radius, w);
  c.tail_cut = get_or<double>(j, "tail_cut", c.tail_cut, w);
  c.validate();
  return c;
}

json to_json(const QuadratureConfig& c) {
  return {{"rel_tol", c.rel_tol},
          {"abs_tol", c.abs_tol},
          {"max_subdivisions", c.max_subdivisions},
          {"split_radius", c.split_radius},
          {"tail_cut", c.tail_cut}};
}

FunctionHandle function_from_json(const json& j, int n, double s) {
  require(j.is_object(), ErrorCode::kInvalidArgument, "function spec must be a JSON object");
  const std::string type = get_req<std::string>(j, "type", "function");
  const std::string w = "function '" + type + "'";
  Point origin{};
  if (type == "zero") {
    check_keys(j, {"type"}, w);
    return fn::zero(n);
  }
  if (type == "constant") {
    check_keys(j, {"type", "value"}, w);
    return fn::constant(n, get_req<double>(j, "value", w));
  }
  if (type == "monomial") {
    check_keys(j, {"type", "exponents", "coef"}, w);
    require(j.contains("exponents"), ErrorCode::kInvalidArgument, w + ": missing required key 'exponents'");
    return fn::monomial(index_from(j["exponents"], n, w + ".exponents"), get_or<double>(j, "coef", 1.0, w));
  }
  if (type == "polynomial") {
    check_keys(j, {"type", "terms"}, w);
    require(j.contains("terms") && j["terms"].is_array(), ErrorCode::kInvalidArgument, w + ": 'terms' must be an array");
    Polynomial poly(n);
    for (const auto& t : j["terms"]) {
      check_keys(t, {"exponents", "coef"}, w + ".terms[]");
      require(t.contains("exponents"), ErrorCode::kInvalidArgument, w + ".terms[]: missing 'exponents'");
      poly.add(index_from(t["exponents"], n, w + ".terms[].exponents"), get_or<double>(t, "coef", 1.0, w));
    }
    return fn::polynomial(poly);
  }
  if (type == "gaussian" || type == "gaussian-bump") {
    check_keys(j, {"type", "center", "width", "amplitude"}, w);
    const Point c = j.contains("center") ? point_from(j["center"], n, w + ".center") : origin;
    const double width = get_or<double>(j, "width", 1.0, w);
    const double amp = get_or<double>(j, "amplitude", 1.0, w);
    return type == "gaussian" ? fn::gaussian(n, c, width, amp) : fn::compact_bump(n, c, width, amp);
  }
  if (type == "annulus-indicator") {
    check_keys(j, {"type", "inner", "outer", "value"}, w);
    return fn::annulus_indicator(n, get_req<double>(j, "inner", w), get_req<double>(j, "outer", w),
                                 get_or<double>(j, "value", 1.0, w));
  }
  if (type == "power-tail") {
    check_keys(j, {"type", "exponent", "cutoff_inner", "cutoff_outer", "coef"}, w);
    return fn::power_tail(n, get_req<double>(j, "exponent", w), get_or<double>(j, "cutoff_inner", 2.0, w),
                          get_or<double>(j, "cutoff_outer", 3.0, w), get_or<double>(j, "coef", 1.0, w));
  }
  if (type == "getoor-profile") {
    check_keys(j, {"type", "exponent", "radius"}, w);
    return fn::getoor_profile(n, get_or<double>(j, "exponent", s, w), get_or<double>(j, "radius", 1.0, w));
  }
  if (type == "sin-composite") {
    check_keys(j, {"type", "amplitude", "frequency", "phase"}, w);
    return fn::sin_composite(n, get_or<double>(j, "amplitude", 1.0, w), get_or<double>(j, "frequency", 1.0, w),
                             get_or<double>(j, "phase", 0.0, w));
  }
  if (type == "poisson-entry") {
    check_keys(j, {"type", "pole", "radius", "weight"}, w);
    require(j.contains("pole"), ErrorCode::kInvalidArgument, w + ": missing required key 'pole'");
    return fn::poisson_entry(n, s, get_or<double>(j, "radius", 1.0, w), point_from(j["pole"], n, w + ".pole"),
                             get_or<double>(j, "weight", 1.0, w));
  }
  if (type == "sum") {
    check_keys(j, {"type", "terms"}, w);
    require(j.contains("terms") && j["terms"].is_array() && !j["terms"].empty(), ErrorCode::kInvalidArgument,
            w + ": 'terms' must be a non-empty array");
    std::vector<std::pair<double, FunctionHandle>> terms;
    for (const auto& t : j["terms"]) {
      check_keys(t, {"coef", "function"}, w + ".terms[]");
      require(t.contains("function"), ErrorCode::kInvalidArgument, w + ".terms[]: missing 'function'");
      terms.emplace_back(get_or<double>(t, "coef", 1.0, w), function_from_json(t["function"], n, s));
    }
    return fn::linear_combination(std::move(terms));
  }
  fail(ErrorCode::kInvalidArgument, "unknown function type '" + type + "'");
}

Nonlinearity nonlinearity_from_json(const json& j, int n, int m) {
  require(j.is_object(), ErrorCode::kInvalidArgument, "nonlinearity spec must be a JSON object");
  const std::string type = get_req<std::string>(j, "type", "nonlinearity");
  const std::string w = "nonlinearity '" + type + "'";
  if (type == "zero") {
    check_keys(j, {"type"}, w);
    return nonlinearity::zero();
  }
  if (type == "constant") {
    check_keys(j, {"type", "value"}, w);
    return nonlinearity::constant(get_req<double>(j, "value", w));
  }
  if (type == "sin-composite") {
    check_keys(j, {"type", "amplitude", "coefs"}, w);
    std::vector<double> coefs;
    if (j.contains("coefs")) {
      coefs = get_or<std::vector<double>>(j, "coefs", {}, w);
    } else {
      // sin(u): the coefficient of the u slot, which follows the n coordinates.
      coefs.assign(static_cast<std::size_t>(n) + 1, 0.0);
      coefs.back() = 1.0;
    }
    require(static_cast<int>(coefs.size()) <= derivative_pack_size(n, m), ErrorCode::kInvalidArgument,
            w + ": more coefficients than derivative-pack entries");
    return nonlinearity::sin_composite(get_or<double>(j, "amplitude", 1.0, w), std::move(coefs));
  }
  fail(ErrorCode::kInvalidArgument, "unknown nonlinearity type '" + type + "'");
}

ShadowConfig shadow_config_from_json(const json& j) {
  const std::string w = "dictionary";
  check_keys(j, {"poles", "rho", "min_gap", "ridge", "max_poles", "grid_size", "pole_study", "safety", "rbar_start",
                 "rbar_max", "harmonicity", "harmonicity_grid"},
             w);
  ShadowConfig c;
  c.poles = get_or<int>(j, "poles", c.poles, w);
  c.rho = get_or<double>(j, "rho", c.rho, w);
  c.min_gap = get_or<double>(j, "min_gap", c.min_gap, w);
  c.ridge = get_or<double>(j, "ridge", c.ridge, w);
  c.max_poles = get_or<int>(j, "max_poles", c.max_poles, w);
  c.grid_size = get_or<int>(j, "grid_size", c.grid_size, w);
  c.pole_study = get_or<std::vector<int>>(j, "pole_study", c.pole_study, w);
  c.safety = get_or<double>(j, "safety", c.safety, w);
  c.rbar_start = get_or<double>(j, "rbar_start", c.rbar_start, w);
  c.rbar_max = get_or<double>(j, "rbar_max", c.rbar_max, w);
  c.compute_harmonicity = get_or<bool>(j, "harmonicity", c.compute_harmonicity, w);
  c.harmonicity_grid = get_or<int>(j, "harmonicity_grid", c.harmonicity_grid, w);
  c.validate();
  return c;
}

McConfig mc_config_from_json(const json& j, std::uint64_t seed) {
  const std::string w = "monte_carlo";
  check_keys(j, {"samples", "streams"}, w);
  McConfig c;
  c.seed = seed;
  c.samples = get_or<std::uint64_t>(j, "samples", c.samples, w);
  c.streams = get_or<int>(j, "streams", c.streams, w);
  c.validate();
  return c;
}

std::string config_hash(const json& j) {
  const std::string text = j.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::vector<Point> points_from_json(const json& j, int n) {
  require(j.is_array(), ErrorCode::kInvalidArgument, "points must be an array");
  std::vector<Point> out;
  for (const auto& p : j) out.push_back(point_from(p, n, "points[]"));
  return out;
}

}  // namespace nlk
