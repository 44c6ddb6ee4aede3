// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// The fractional Laplacian of functions with integrable tails, its
// Taylor-compensated counterpart for functions of polynomial growth, the
// truncation family that defines the latter, and comparison of grid
// functions modulo polynomials.

#include <vector>

#include "nlk/function.hpp"
#include "nlk/multi_index.hpp"
#include "nlk/quadrature.hpp"
#include "nlk/types.hpp"

namespace nlk {

/// Degree up to which right-hand sides of the compensated equation are
/// identified: k for s <= 1/2 and k + 1 for s > 1/2.
int admissible_degree(const FracParams& p);

/// PV int (u(x) - u(y)) |x-y|^{-n-2s} dy. Requires tail exponent < 2s.
Estimate classical_flap(const FunctionHandle& u, const Point& x, const FracParams& p, const QuadratureConfig& cfg);

/// Canonical representative of the order-k compensated fractional Laplacian
/// at x in B_1:
///   PV int_{B_2} (u(x)-u(y)) K dy + u(x) int_{B_2^c} K dy - int_{B_2^c} u(y) Rem_k(x,y) dy.
/// Requires tail exponent < 2s + k.
Estimate divergent_flap(const FunctionHandle& u, const Point& x, const FracParams& p, const QuadratureConfig& cfg);

/// -int_{|y| >= inner} u(y) Rem_k(x,y) dy, atoms included. Needs |x| < inner.
/// Unnormalized.
Estimate compensated_tail(const FunctionHandle& u, const Point& x, const FracParams& p, const QuadratureConfig& cfg,
                          double inner = 2.0);

/// int_{|y| > R} |u(y)| |y|^{-n-2s-k} dy, atoms included.
Estimate tail_integral(const FunctionHandle& u, double R, const FracParams& p, const QuadratureConfig& cfg);

/// Throws kNotInUk unless the declared tail exponent is below 2s + k.
void require_in_Uk(const FunctionHandle& u, const FracParams& p);

struct TruncationReport {
  double R = 0.0;
  std::vector<Point> points;
  std::vector<double> f_R;
  std::vector<double> f_R_error;
  std::vector<double> limit;
  Polynomial P_R;
  /// max over the grid of |f_R - divergent_flap|.
  double residual_to_limit = 0.0;
};

/// f_R = (-Delta)^s (u 1_{B_R}) - P_R on the grid, with
/// P_R(x) = -sum_{|alpha| <= k-1} x^alpha/alpha! int_{2<|y|<R} u(y) d^alpha_x K(0,y) dy.
TruncationReport truncated_flap(const FunctionHandle& u, const std::vector<Point>& points, double R,
                                const FracParams& p, const QuadratureConfig& cfg);

struct PolyFit {
  double residual = 0.0;
  Polynomial q;
};

/// Least-squares fit of a degree-d polynomial q to f - g on the points;
/// returns max |f - g - q|. d = -1 means q = 0.
PolyFit mod_poly_distance(int n, const std::vector<Point>& points, const std::vector<double>& f,
                          const std::vector<double>& g, int degree);

/// Evaluates an operator on every grid point (in parallel).
std::vector<Estimate> evaluate_grid(const std::vector<Point>& points,
                                    const std::function<Estimate(const Point&)>& op);

}  // namespace nlk
