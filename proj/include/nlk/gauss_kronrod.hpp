// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Globally adaptive 21-point Gauss-Kronrod integration on a finite interval.
// The integrand may return either a plain double or an Estimate; in the
// latter case the inner error estimates are integrated with the Kronrod
// weights and added to the reported error, so nested integrals carry an
// honest total error.

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <type_traits>
#include <vector>

#include "nlk/types.hpp"

namespace nlk::quad {

struct Tolerance {
  double rel = 1e-8;
  double abs = 1e-10;
  int max_subdivisions = 2000;

  Tolerance tightened(double factor) const { return {rel * factor, abs * factor, max_subdivisions}; }
};

namespace detail {

inline constexpr double kXgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr double kWgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208636992474, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr double kWg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  bool converged = true;
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
  double inner = 0.0;
  bool operator<(const Panel& o) const { return error + inner < o.error + o.inner; }
};

inline Estimate as_estimate(double v) { return {v, 0.0, true}; }
inline Estimate as_estimate(const Estimate& e) { return e; }

template <class F>
Panel kronrod21(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double abs_half = std::abs(half);
  Estimate fc = as_estimate(f(center));
  bool conv = fc.converged;
  double resk = fc.value * kWgk[10];
  double resg = 0.0;
  double resabs = std::abs(resk);
  double inner = fc.error * kWgk[10];
  double fv1[10];
  double fv2[10];
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    Estimate f1 = as_estimate(f(center - dx));
    Estimate f2 = as_estimate(f(center + dx));
    conv = conv && f1.converged && f2.converged;
    fv1[j] = f1.value;
    fv2[j] = f2.value;
    resk += kWgk[j] * (f1.value + f2.value);
    resabs += kWgk[j] * (std::abs(f1.value) + std::abs(f2.value));
    inner += kWgk[j] * (f1.error + f2.error);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1.value + f2.value);
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[10] * std::abs(fc.value - reskh);
  for (int j = 0; j < 10; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

  Panel p;
  p.a = a;
  p.b = b;
  p.value = resk * half;
  resasc *= abs_half;
  resabs *= abs_half;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(eps * 50.0 * resabs, err);
  p.error = err;
  p.inner = inner * abs_half;
  p.converged = conv;
  return p;
}

}  // namespace detail

/// Adaptive integral of f over [a,b]. The panel with the largest error is
/// bisected until the tolerance is met or the subdivision budget is spent;
/// in the latter case the result has converged == false. The reported error
/// always includes the propagated integrand error.
template <class F>
Estimate integrate(F&& f, double a, double b, const Tolerance& tol) {
  if (a == b) return {};
  std::priority_queue<detail::Panel> heap;
  detail::Panel first = detail::kronrod21(f, a, b);
  double total = first.value;
  double err = first.error;
  double inner = first.inner;
  heap.push(first);
  int panels = 1;
  // Refinement stops once the discretization error is below the tolerance
  // or below the propagated error of the integrand values themselves.
  auto done = [&] { return err <= std::max({tol.abs, tol.rel * std::abs(total), inner}); };
  while (!done() && panels < tol.max_subdivisions) {
    detail::Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) break;
    heap.pop();
    detail::Panel left = detail::kronrod21(f, worst.a, mid);
    detail::Panel right = detail::kronrod21(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    inner += left.inner + right.inner - worst.inner;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  // Recompute the sums from the panels to shed accumulated cancellation.
  total = 0.0;
  err = 0.0;
  inner = 0.0;
  std::vector<detail::Panel> all;
  all.reserve(heap.size());
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const auto& l, const auto& r) { return l.a < r.a; });
  bool inner_converged = true;
  for (const auto& p : all) {
    inner_converged = inner_converged && p.converged;
    total += p.value;
    err += p.error;
    inner += p.inner;
  }
  return {total, err + inner, done() && inner_converged};
}

}  // namespace nlk::quad
