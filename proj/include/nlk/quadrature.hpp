// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Polar-coordinate quadrature on regions of R^n bounded by origin-centred
// spheres and by spheres about an expansion point, with endpoint
// singularity substitutions and an algebraic tail map for unbounded rays.

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "nlk/function.hpp"
#include "nlk/gauss_kronrod.hpp"
#include "nlk/types.hpp"

namespace nlk {

struct QuadratureConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  int max_subdivisions = 2000;
  /// Radius of the symmetrized principal-value neighbourhood.
  double split_radius = 0.1;
  /// Unbounded rays are integrated directly up to at most this radius and
  /// through the algebraic tail map beyond it.
  double tail_cut = 1e3;

  void validate() const;
  quad::Tolerance tolerance() const { return {rel_tol, abs_tol, max_subdivisions}; }
  /// Same settings with both tolerances multiplied by `factor`.
  QuadratureConfig scaled(double factor) const;
};

using Integrand = std::function<Estimate(const Point&)>;

/// {y : inner <= |y| < outer, hole <= |y - x| <= reach} for an expansion point x.
struct Region {
  double inner = 0.0;
  double outer = std::numeric_limits<double>::infinity();
  double hole = 0.0;
  double reach = std::numeric_limits<double>::infinity();
  std::vector<Break> breaks;
  /// If set, f(y) |y-x|^{n-1} ~ |y-x|^e near x (e > -1).
  std::optional<double> center_exponent;
  /// f(y) = O(|y|^{-n-decay}) at infinity; must be positive for unbounded regions.
  double decay = std::numeric_limits<double>::infinity();
};

/// Surface measure of the unit sphere S^{n-1} (2 for n = 1).
double sphere_area(int n);

/// Integral of f over the region, in polar coordinates about x.
Estimate integrate_about(int n, const Point& x, const Region& region, const Integrand& f, const QuadratureConfig& cfg);

/// Integral of f over B_radius(center).
Estimate integrate_ball(int n, const Integrand& f, const Point& center, double radius, const QuadratureConfig& cfg,
                        std::optional<double> center_exponent = std::nullopt, std::vector<Break> breaks = {});

/// Integral of f over {|y| > R}; `decay` as in Region.
Estimate integrate_exterior(int n, const Integrand& f, double R, double decay, const QuadratureConfig& cfg,
                            std::vector<Break> breaks = {});

/// -(1/2) int_{B_delta} (u(x+z) + u(x-z) - 2u(x)) |z|^{-n-2s} dz.
/// Inside hessian_switch_radius(u) the second difference is replaced by its
/// Hessian quadratic form and integrated in closed form.
Estimate pv_second_difference(const FunctionHandle& u, const Point& x, double s, double delta,
                              const QuadratureConfig& cfg);

}  // namespace nlk
