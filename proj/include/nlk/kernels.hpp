// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Closed-form kernels: the Riesz kernel |x-y|^{-(n+2s)}, its Taylor
// expansion in x about the origin, the compensated kernel psi, and the
// Poisson kernel and Green function of balls.

#include <cmath>
#include <vector>

#include "nlk/dual.hpp"
#include "nlk/multi_index.hpp"
#include "nlk/types.hpp"

namespace nlk::kernels {

/// Largest |alpha| supported by kernel_x_derivative.
inline constexpr int kMaxDerivativeOrder = 4;

/// c(n,s) = 4^s Gamma(n/2+s) / (pi^{n/2} |Gamma(-s)|).
double normalization_const(int n, double s);
/// C(n,s) = Gamma(n/2) sin(pi s) / pi^{n/2+1}, the Poisson kernel constant.
double poisson_const(int n, double s);
/// kappa(n,s) = Gamma(n/2) / (4^s pi^{n/2} Gamma(s)^2), the Green constant.
double green_const(int n, double s);
/// Getoor's constant 4^s Gamma(1+s) Gamma(n/2+s) / Gamma(n/2): the normalized
/// fractional Laplacian of (1-|x|^2)_+^s inside B_1.
double getoor_const(int n, double s);

/// |x-y|^{-(n+2s)}, times c(n,s) when normalized.
double riesz_kernel(const FracParams& p, const Point& x, const Point& y);

/// d^alpha_x |x-y|^{-(n+2s)} at x = 0 by exact symbolic differentiation.
/// Never carries c(n,s).
double kernel_x_derivative(const FracParams& p, const MultiIndex& alpha, const Point& y);

/// Rem_k(x,y) = K(x,y) - sum_{|alpha|<=k-1} x^alpha/alpha! d^alpha_x K(0,y),
/// with K unnormalized. Uses the Gegenbauer series when |x| < |y|/2 and the
/// explicit Taylor polynomial otherwise.
double taylor_remainder(const FracParams& p, const Point& x, const Point& y);

/// psi(x,y) = -|y|^{n+2s+k} Rem_k(x,y) for |x| < 1 <= 2 <= |y|.
double psi(const FracParams& p, const Point& x, const Point& y);

/// psi written in the invariants (|x|, |y|, cos angle). Valid for |x| < |y|.
double psi_invariant(const FracParams& p, double rx, double ry, double cos_angle);

/// Empirical sup of |psi| over |x| <= x_max, 2 <= |y| <= y_max and all
/// relative angles, sampled on a lattice with the given resolutions.
double psi_sup(const FracParams& p, int x_points = 40, int y_points = 64, int angle_points = 33,
               double x_max = 0.99, double y_max = 1.0e3);

/// Cached psi_sup with default resolution.
double psi_bound(const FracParams& p);

/// Poisson kernel of B_r for the s-Laplacian, x inside, y outside.
double poisson_kernel_ball(const FracParams& p, double r, const Point& x, const Point& y);

/// Generic form used for exact x-derivatives.
template <class T>
T poisson_kernel_generic(int n, double s, double r, const std::array<T, 3>& x, const Point& y) {
  using std::pow;
  using std::sqrt;
  T x2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
  T d2 = (x[0] - y[0]) * (x[0] - y[0]) + (x[1] - y[1]) * (x[1] - y[1]) + (x[2] - y[2]) * (x[2] - y[2]);
  double y2 = norm2(y);
  T ratio = (r * r - x2) / (y2 - r * r);
  return poisson_const(n, s) * pow(ratio, s) * pow(d2, -0.5 * n);
}

/// Green function of B_r for the normalized s-Laplacian, x != y both inside.
double green_ball(const FracParams& p, double r, const Point& x, const Point& y);

/// int_0^{r0} t^{s-1} (1+t)^{-n/2} dt through the incomplete beta function.
double green_inner_integral(int n, double s, double r0);

}  // namespace nlk::kernels
