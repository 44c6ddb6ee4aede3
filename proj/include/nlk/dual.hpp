// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Forward-mode dual numbers. Nesting Dual<Dual<...>> to depth d yields exact
// mixed partial derivatives of order d for any function written generically
// over its scalar type.

#include <array>
#include <cmath>
#include <vector>

#include "nlk/error.hpp"
#include "nlk/multi_index.hpp"

namespace nlk {

template <class T>
struct Dual {
  T v{};
  T d{};

  Dual() = default;
  Dual(double c) : v(c), d(0.0) {}  // NOLINT: implicit promotion of constants
  Dual(T value, T deriv) : v(value), d(deriv) {}
};

template <class T> Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) { return {a.v + b.v, a.d + b.d}; }
template <class T> Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) { return {a.v - b.v, a.d - b.d}; }
template <class T> Dual<T> operator-(const Dual<T>& a) { return {-a.v, -a.d}; }
template <class T> Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
template <class T> Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
  T inv = T(1.0) / b.v;
  return {a.v * inv, (a.d - a.v * inv * b.d) * inv};
}
template <class T> Dual<T> operator+(const Dual<T>& a, double b) { return {a.v + b, a.d}; }
template <class T> Dual<T> operator+(double a, const Dual<T>& b) { return {a + b.v, b.d}; }
template <class T> Dual<T> operator-(const Dual<T>& a, double b) { return {a.v - b, a.d}; }
template <class T> Dual<T> operator-(double a, const Dual<T>& b) { return {a - b.v, -b.d}; }
template <class T> Dual<T> operator*(const Dual<T>& a, double b) { return {a.v * b, a.d * b}; }
template <class T> Dual<T> operator*(double a, const Dual<T>& b) { return {a * b.v, a * b.d}; }
template <class T> Dual<T> operator/(const Dual<T>& a, double b) { return {a.v / b, a.d / b}; }
template <class T> Dual<T> operator/(double a, const Dual<T>& b) { return Dual<T>(a) / b; }
template <class T> Dual<T>& operator+=(Dual<T>& a, const Dual<T>& b) { return a = a + b; }
template <class T> Dual<T>& operator-=(Dual<T>& a, const Dual<T>& b) { return a = a - b; }
template <class T> Dual<T>& operator*=(Dual<T>& a, const Dual<T>& b) { return a = a * b; }

inline double primal(double x) { return x; }
template <class T> double primal(const Dual<T>& x) { return primal(x.v); }

template <class T> bool operator<(const Dual<T>& a, double b) { return primal(a) < b; }
template <class T> bool operator>(const Dual<T>& a, double b) { return primal(a) > b; }
template <class T> bool operator<=(const Dual<T>& a, double b) { return primal(a) <= b; }
template <class T> bool operator>=(const Dual<T>& a, double b) { return primal(a) >= b; }

template <class T> Dual<T> exp(const Dual<T>& a) {
  using std::exp;
  T e = exp(a.v);
  return {e, e * a.d};
}
template <class T> Dual<T> log(const Dual<T>& a) {
  using std::log;
  return {log(a.v), a.d / a.v};
}
template <class T> Dual<T> sin(const Dual<T>& a) {
  using std::cos;
  using std::sin;
  return {sin(a.v), cos(a.v) * a.d};
}
template <class T> Dual<T> cos(const Dual<T>& a) {
  using std::cos;
  using std::sin;
  return {cos(a.v), -(sin(a.v) * a.d)};
}
template <class T> Dual<T> sqrt(const Dual<T>& a) {
  using std::sqrt;
  T r = sqrt(a.v);
  return {r, a.d / (2.0 * r)};
}
template <class T> Dual<T> pow(const Dual<T>& a, double p) {
  using std::pow;
  if (p == 0.0) return Dual<T>(1.0);
  return {pow(a.v, p), p * pow(a.v, p - 1.0) * a.d};
}

template <int Depth> struct NestedDual { using type = Dual<typename NestedDual<Depth - 1>::type>; };
template <> struct NestedDual<0> { using type = double; };
template <int Depth> using Jet = typename NestedDual<Depth>::type;

namespace detail {

template <int Depth>
Jet<Depth> seed(double value, const std::array<int, 4>& dirs, int axis) {
  if constexpr (Depth == 0) {
    return value;
  } else {
    Jet<Depth - 1> lower = seed<Depth - 1>(value, dirs, axis);
    Jet<Depth - 1> unit = Jet<Depth - 1>(dirs[Depth - 1] == axis ? 1.0 : 0.0);
    return Jet<Depth>(lower, unit);
  }
}

template <int Depth>
double top_derivative(const Jet<Depth>& x) {
  if constexpr (Depth == 0) {
    return x;
  } else {
    return top_derivative<Depth - 1>(x.d);
  }
}

template <int Depth, class Fn>
double mixed_partial(Fn&& fn, const Point& x, const std::array<int, 4>& dirs) {
  std::array<Jet<Depth>, kMaxDim> xs;
  for (int i = 0; i < kMaxDim; ++i) xs[i] = seed<Depth>(x[i], dirs, i);
  return top_derivative<Depth>(fn(xs));
}

}  // namespace detail

inline constexpr int kMaxJetOrder = 4;

/// Evaluates d^alpha fn at x, where `fn` is a generic lambda taking
/// std::array<T,3> and returning T. Orders up to kMaxJetOrder.
template <class Fn>
double jet_derivative(Fn&& fn, const MultiIndex& alpha, const Point& x) {
  std::array<int, 4> dirs{-1, -1, -1, -1};
  int depth = 0;
  for (int i = 0; i < kMaxDim; ++i)
    for (int j = 0; j < alpha.c[i]; ++j) {
      require(depth < kMaxJetOrder, ErrorCode::kUnsupportedOrder,
              "derivative order above " + std::to_string(kMaxJetOrder) + " is not supported");
      dirs[depth++] = i;
    }
  switch (depth) {
    case 0: return detail::mixed_partial<0>(fn, x, dirs);
    case 1: return detail::mixed_partial<1>(fn, x, dirs);
    case 2: return detail::mixed_partial<2>(fn, x, dirs);
    case 3: return detail::mixed_partial<3>(fn, x, dirs);
    default: return detail::mixed_partial<4>(fn, x, dirs);
  }
}

}  // namespace nlk
