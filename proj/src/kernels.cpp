// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlk/kernels.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "nlk/error.hpp"

namespace nlk::kernels {

namespace {

// Term coef * z^beta * |z|^{-q} of the symbolic derivative of |z|^{-p}.
struct PowerTerm {
  double coef;
  std::array<int, kMaxDim> beta;
  double q;
};

std::vector<PowerTerm> differentiate(const std::vector<PowerTerm>& terms, int axis) {
  std::vector<PowerTerm> out;
  out.reserve(2 * terms.size());
  for (const auto& t : terms) {
    if (t.beta[axis] > 0) {
      PowerTerm a = t;
      a.coef *= t.beta[axis];
      a.beta[axis] -= 1;
      out.push_back(a);
    }
    PowerTerm b = t;
    b.coef *= -t.q;
    b.beta[axis] += 1;
    b.q += 2.0;
    out.push_back(b);
  }
  // Merge equal (beta, q) pairs.
  std::vector<PowerTerm> merged;
  for (const auto& t : out) {
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const PowerTerm& m) { return m.beta == t.beta && m.q == t.q; });
    if (it == merged.end())
      merged.push_back(t);
    else
      it->coef += t.coef;
  }
  return merged;
}

// Gegenbauer series sum_{j>=k} C_j^lambda(t) rho^{j-k}.
double gegenbauer_tail(double lambda, double t, double rho, int k) {
  double c_prev = 0.0;  // C_{-1}
  double c_cur = 1.0;   // C_0
  double sum = 0.0;
  double rpow = 1.0;
  int quiet = 0;
  for (int j = 0; j < 4000; ++j) {
    if (j > 0) {
      const double c_next = (2.0 * t * (j + lambda - 1.0) * c_cur - (j + 2.0 * lambda - 2.0) * c_prev) / j;
      c_prev = c_cur;
      c_cur = c_next;
    }
    if (j < k) continue;
    const double term = c_cur * rpow;
    sum += term;
    rpow *= rho;
    if (rpow == 0.0) break;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) {
      if (++quiet >= 3) break;
    } else {
      quiet = 0;
    }
  }
  return sum;
}

double cos_angle(const Point& x, double rx, const Point& y, double ry) {
  if (rx == 0.0 || ry == 0.0) return 1.0;
  return std::clamp(dot(x, y) / (rx * ry), -1.0, 1.0);
}

}  // namespace

double normalization_const(int n, double s) {
  require(n >= 1 && n <= kMaxDim && s > 0.0 && s < 1.0, ErrorCode::kInvalidArgument,
          "normalization_const needs n in {1,2,3} and s in (0,1)");
  // |Gamma(-s)| = Gamma(1-s)/s
  return std::pow(4.0, s) * std::tgamma(0.5 * n + s) * s / (std::pow(kPi, 0.5 * n) * std::tgamma(1.0 - s));
}

double poisson_const(int n, double s) {
  return std::tgamma(0.5 * n) * std::sin(kPi * s) / std::pow(kPi, 0.5 * n + 1.0);
}

double green_const(int n, double s) {
  const double gs = std::tgamma(s);
  return std::tgamma(0.5 * n) / (std::pow(4.0, s) * std::pow(kPi, 0.5 * n) * gs * gs);
}

double getoor_const(int n, double s) {
  return std::pow(4.0, s) * std::tgamma(1.0 + s) * std::tgamma(0.5 * n + s) / std::tgamma(0.5 * n);
}

double riesz_kernel(const FracParams& p, const Point& x, const Point& y) {
  const double d = distance(x, y);
  require(d > 0.0, ErrorCode::kDomain, "riesz_kernel: coincident points");
  const double v = std::pow(d, -p.kernel_exponent());
  return p.normalized ? v * normalization_const(p.n, p.s) : v;
}

double kernel_x_derivative(const FracParams& p, const MultiIndex& alpha, const Point& y) {
  require(alpha.order() <= kMaxDerivativeOrder, ErrorCode::kUnsupportedOrder,
          "kernel_x_derivative: order " + std::to_string(alpha.order()) + " exceeds cap " +
              std::to_string(kMaxDerivativeOrder));
  const double ry = norm(y);
  require(ry > 0.0, ErrorCode::kDomain, "kernel_x_derivative: y must be nonzero");
  std::vector<PowerTerm> terms{{1.0, {0, 0, 0}, p.kernel_exponent()}};
  for (int axis = 0; axis < kMaxDim; ++axis)
    for (int j = 0; j < alpha.c[axis]; ++j) terms = differentiate(terms, axis);
  const Point z = -1.0 * y;
  double v = 0.0;
  for (const auto& t : terms) {
    double mono = 1.0;
    for (int axis = 0; axis < kMaxDim; ++axis)
      for (int j = 0; j < t.beta[axis]; ++j) mono *= z[axis];
    v += t.coef * mono * std::pow(ry, -t.q);
  }
  return v;
}

double taylor_remainder(const FracParams& p, const Point& x, const Point& y) {
  const double ry = norm(y);
  const double rx = norm(x);
  require(ry > 0.0, ErrorCode::kDomain, "taylor_remainder: y must be nonzero");
  require(distance(x, y) > 0.0, ErrorCode::kDomain, "taylor_remainder: x and y coincide");
  const double pe = p.kernel_exponent();
  if (rx == 0.0) return p.k == 0 ? std::pow(ry, -pe) : 0.0;
  const double rho = rx / ry;
  if (rho <= 0.5) {
    const double t = cos_angle(x, rx, y, ry);
    return std::pow(ry, -pe) * std::pow(rho, p.k) * gegenbauer_tail(0.5 * pe, t, rho, p.k);
  }
  FracParams raw = p;
  raw.normalized = false;
  double v = riesz_kernel(raw, x, y);
  for (const auto& alpha : multi_indices_up_to(p.n, p.k - 1))
    v -= alpha.power(x) / alpha.factorial() * kernel_x_derivative(p, alpha, y);
  return v;
}

double psi_invariant(const FracParams& p, double rx, double ry, double cos_angle_xy) {
  require(rx < ry, ErrorCode::kDomain, "psi_invariant: need |x| < |y|");
  const double rho = rx / ry;
  const double xk = p.k == 0 ? 1.0 : std::pow(rx, p.k);
  if (xk == 0.0) return 0.0;
  return -xk * gegenbauer_tail(0.5 * p.kernel_exponent(), cos_angle_xy, rho, p.k);
}

double psi(const FracParams& p, const Point& x, const Point& y) {
  const double rx = norm(x);
  const double ry = norm(y);
  require(rx < 1.0, ErrorCode::kDomain, "psi: x must lie in B_1");
  require(ry >= 2.0, ErrorCode::kDomain, "psi: y must satisfy |y| >= 2");
  return psi_invariant(p, rx, ry, cos_angle(x, rx, y, ry));
}

double psi_sup(const FracParams& p, int x_points, int y_points, int angle_points, double x_max, double y_max) {
  p.validate();
  double best = 0.0;
  const int na = p.n == 1 ? 2 : std::max(angle_points, 2);
  for (int i = 0; i < x_points; ++i) {
    const double rx = x_max * i / std::max(x_points - 1, 1);
    for (int j = 0; j < y_points; ++j) {
      const double ry = 2.0 * std::pow(y_max / 2.0, static_cast<double>(j) / std::max(y_points - 1, 1));
      for (int a = 0; a < na; ++a) {
        const double t = -1.0 + 2.0 * a / (na - 1);
        best = std::max(best, std::abs(psi_invariant(p, rx, ry, t)));
      }
    }
  }
  return best;
}

double psi_bound(const FracParams& p) {
  static std::mutex mu;
  static std::map<std::tuple<int, double, int>, double> cache;
  const auto key = std::make_tuple(p.n, p.s, p.k);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const double v = psi_sup(p);
  std::lock_guard lock(mu);
  cache[key] = v;
  return v;
}

double poisson_kernel_ball(const FracParams& p, double r, const Point& x, const Point& y) {
  const double rx = norm(x);
  const double ry = norm(y);
  require(rx < r && r < ry, ErrorCode::kDomain, "poisson_kernel_ball: need |x| < r < |y|");
  return poisson_const(p.n, p.s) * std::pow((r * r - rx * rx) / (ry * ry - r * r), p.s) *
         std::pow(distance(x, y), -static_cast<double>(p.n));
}

double green_inner_integral(int n, double s, double r0) {
  require(r0 >= 0.0, ErrorCode::kDomain, "green_inner_integral: r0 must be non-negative");
  if (r0 == 0.0) return 0.0;
  const double a = s;
  const double b = 0.5 * n - s;
  const double x = r0 / (1.0 + r0);
  const double xc = 1.0 / (1.0 + r0);
  // B_x(a,b) for b > 0, evaluated from the side that keeps full precision.
  auto incomplete = [](double aa, double bb, double xx, double xxc) {
    if (xx <= 0.5) return boost::math::beta(aa, bb, xx);
    return boost::math::beta(aa, bb) - boost::math::beta(bb, aa, xxc);
  };
  // Elementary cases: b = 0 (n = 1, s = 1/2), a = b = 1/2 (n = 2, s = 1/2), b = 1.
  if (std::abs(b) < 1e-12) return 2.0 * std::asinh(std::sqrt(r0));
  if (std::abs(a - 0.5) < 1e-12 && std::abs(b - 0.5) < 1e-12) return 2.0 * std::atan(std::sqrt(r0));
  if (std::abs(b - 1.0) < 1e-12) return std::pow(x, a) / a;
  if (b > 0.0) return incomplete(a, b, x, xc);
  // b in (-1/2, 0): raise b by one with B_x(a,b) = ((a+b) B_x(a,b+1) - x^a (1-x)^b) / b.
  const double raised = incomplete(a, b + 1.0, x, xc);
  return ((a + b) * raised - std::pow(x, a) * std::pow(xc, b)) / b;
}

double green_ball(const FracParams& p, double r, const Point& x, const Point& y) {
  const double rx2 = norm2(x);
  const double ry2 = norm2(y);
  const double r2 = r * r;
  require(rx2 < r2 && ry2 < r2, ErrorCode::kDomain, "green_ball: points must lie inside the ball");
  const double d = distance(x, y);
  require(d > 0.0, ErrorCode::kDomain, "green_ball: coincident points");
  const double r0 = (r2 - rx2) * (r2 - ry2) / (r2 * d * d);
  return green_const(p.n, p.s) * std::pow(d, 2.0 * p.s - p.n) * green_inner_integral(p.n, p.s, r0);
}

}  // namespace nlk::kernels
