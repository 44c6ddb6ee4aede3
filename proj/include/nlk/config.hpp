// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// JSON run configurations: operator parameters, quadrature settings, and a
// closed set of named function and nonlinearity built-ins. Every object is
// checked for unknown keys before use.

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nlk/approx.hpp"
#include "nlk/function.hpp"
#include "nlk/oracle.hpp"
#include "nlk/quadrature.hpp"
#include "nlk/types.hpp"

namespace nlk {

using json = nlohmann::json;

/// Throws kInvalidArgument naming `where` if `obj` is not an object or has a
/// key outside `allowed`.
void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where);

FracParams params_from_json(const json& j);
json to_json(const FracParams& p);

QuadratureConfig quadrature_from_json(const json& j);
json to_json(const QuadratureConfig& cfg);

/// Built-ins: zero, constant, monomial, polynomial, gaussian, gaussian-bump,
/// annulus-indicator, power-tail, getoor-profile, sin-composite,
/// poisson-entry, and sum (a linear combination of nested specs).
FunctionHandle function_from_json(const json& j, int n, double s);

/// zero, constant, sin-composite.
Nonlinearity nonlinearity_from_json(const json& j, int n, int m);

ShadowConfig shadow_config_from_json(const json& j);
McConfig mc_config_from_json(const json& j, std::uint64_t seed);

/// 64-bit FNV-1a of the canonical (key-sorted, compact) serialization, in hex.
std::string config_hash(const json& j);

/// A list of points, each an array of n coordinates.
std::vector<Point> points_from_json(const json& j, int n);

}  // namespace nlk
