// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlk/chebyshev.hpp"

#include <algorithm>
#include <cmath>

#include "nlk/error.hpp"
#include "nlk/grid.hpp"
#include "nlk/parallel.hpp"

namespace nlk {

namespace {

// One barycentric pass along a contiguous run of `m` samples.
double bary(const std::vector<double>& x, const std::vector<double>& w, const double* f, double t) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double d = t - x[j];
    if (d == 0.0) return f[j];
    const double c = w[j] / d;
    num += c * f[j];
    den += c;
  }
  return num / den;
}

}  // namespace

ChebyshevInterpolant ChebyshevInterpolant::build(int n, double half_width, int nodes,
                                                 const std::function<Estimate(const Point&)>& f) {
  require(n >= 1 && n <= kMaxDim, ErrorCode::kInvalidArgument, "dimension must be 1, 2 or 3");
  require(nodes >= 2 && half_width > 0.0, ErrorCode::kInvalidArgument, "invalid interpolation box");
  ChebyshevInterpolant c;
  c.n_ = n;
  c.nodes_ = nodes;
  c.half_width_ = half_width;
  c.x_ = chebyshev_nodes(nodes);
  c.w_.resize(nodes);
  for (int j = 0; j < nodes; ++j)
    c.w_[j] = ((j % 2) ? -1.0 : 1.0) * std::sin(kPi * (2.0 * j + 1.0) / (2.0 * nodes));

  std::size_t total = 1;
  for (int d = 0; d < n; ++d) total *= nodes;
  c.values_.assign(total, 0.0);
  std::vector<double> errs(total, 0.0);
  parallel_for(total, [&](std::size_t idx) {
    Point y{};
    std::size_t r = idx;
    for (int d = n - 1; d >= 0; --d) {
      y[d] = half_width * c.x_[r % nodes];
      r /= nodes;
    }
    const Estimate e = f(y);
    c.values_[idx] = e.value;
    errs[idx] = e.error;
  });

  // Chebyshev coefficients by separable transforms; the trailing ones
  // estimate the truncation error.
  std::vector<double> coef = c.values_;
  std::vector<double> tm(static_cast<std::size_t>(nodes) * nodes);
  for (int m = 0; m < nodes; ++m)
    for (int j = 0; j < nodes; ++j) tm[m * nodes + j] = std::cos(m * std::acos(c.x_[j])) * 2.0 / nodes;
  std::size_t stride = 1;
  for (int d = n - 1; d >= 0; --d) {
    std::vector<double> next(total, 0.0);
    for (std::size_t idx = 0; idx < total; ++idx) {
      const std::size_t j = (idx / stride) % nodes;
      if (j != 0) continue;
      for (int m = 0; m < nodes; ++m) {
        double acc = 0.0;
        for (int q = 0; q < nodes; ++q) acc += tm[m * nodes + q] * coef[idx + q * stride];
        next[idx + m * stride] = m == 0 ? 0.5 * acc : acc;
      }
    }
    coef.swap(next);
    stride *= nodes;
  }
  double trailing = 0.0;
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t r = idx;
    int top = 0;
    for (int d = 0; d < n; ++d) {
      top = std::max(top, static_cast<int>(r % nodes));
      r /= nodes;
    }
    if (top >= nodes - 2) trailing += std::abs(coef[idx]);
  }
  const double lebesgue = std::pow(2.0 / kPi * std::log(nodes + 1.0) + 1.0, n);
  const double sample_err = errs.empty() ? 0.0 : *std::max_element(errs.begin(), errs.end());
  c.error_ = trailing + lebesgue * sample_err;
  for (double v : c.values_) c.sup_abs_ = std::max(c.sup_abs_, std::abs(v));
  return c;
}

double ChebyshevInterpolant::operator()(const Point& y) const {
  require(nodes_ > 0, ErrorCode::kPrecondition, "interpolant is empty");
  const int m = nodes_;
  std::vector<double> work = values_;
  std::size_t len = work.size();
  // Contract the last axis first; samples are stored with the last axis fastest.
  for (int d = n_ - 1; d >= 0; --d) {
    const double t = std::clamp(y[d] / half_width_, -1.0, 1.0);
    const std::size_t outer = len / m;
    for (std::size_t o = 0; o < outer; ++o) work[o] = bary(x_, w_, &work[o * m], t);
    len = outer;
  }
  return work[0];
}

}  // namespace nlk
