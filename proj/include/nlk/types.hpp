// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <span>
#include <string>

namespace nlk {

/// A point of R^n stored in three slots. Unused trailing slots are always
/// zero, so norms and inner products need not know the dimension.
using Point = std::array<double, 3>;

inline constexpr int kMaxDim = 3;
inline constexpr double kPi = 3.141592653589793238462643383279502884;

inline double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm2(const Point& a) { return dot(a, a); }
inline double norm(const Point& a) { return std::sqrt(norm2(a)); }
inline Point operator+(const Point& a, const Point& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Point operator-(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Point operator*(double t, const Point& a) { return {t * a[0], t * a[1], t * a[2]}; }
inline double distance(const Point& a, const Point& b) { return norm(a - b); }

/// An origin-centred sphere across which an integrand is not smooth. Near the
/// sphere the integrand behaves like dist^exponent (0 for a plain kink or jump).
struct Break {
  double radius = 0.0;
  double exponent = 0.0;
};

/// Builds a point from the first n coordinates of `c`.
Point make_point(std::span<const double> c);
std::string to_string(const Point& p, int n);

/// Dimension, fractional order and compensation order of the operator.
/// `normalized` multiplies every operator value by c(n,s).
struct FracParams {
  int n = 1;
  double s = 0.5;
  int k = 0;
  bool normalized = false;

  /// Exponent n + 2s of the Riesz kernel.
  double kernel_exponent() const { return n + 2.0 * s; }
  void validate() const;
};

/// An integral value with its absolute error estimate.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;

  Estimate& operator+=(const Estimate& o) {
    value += o.value;
    error += o.error;
    converged = converged && o.converged;
    return *this;
  }
  Estimate& operator-=(const Estimate& o) {
    value -= o.value;
    error += o.error;
    converged = converged && o.converged;
    return *this;
  }
  Estimate& operator*=(double t) {
    value *= t;
    error *= std::abs(t);
    return *this;
  }
};

inline Estimate operator+(Estimate a, const Estimate& b) { return a += b; }
inline Estimate operator-(Estimate a, const Estimate& b) { return a -= b; }
inline Estimate operator*(double t, Estimate a) { return a *= t; }

}  // namespace nlk
