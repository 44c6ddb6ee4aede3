// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Tensor-product Chebyshev interpolation on the cube [-a, a]^n, used to
// cache expensive smooth fields such as compensated exterior integrals.

#include <functional>
#include <vector>

#include "nlk/types.hpp"

namespace nlk {

class ChebyshevInterpolant {
 public:
  ChebyshevInterpolant() = default;

  /// Samples f at nodes^n first-kind Chebyshev points of [-half_width, half_width]^n.
  static ChebyshevInterpolant build(int n, double half_width, int nodes,
                                    const std::function<Estimate(const Point&)>& f);

  /// Barycentric evaluation; y must lie in the cube.
  double operator()(const Point& y) const;
  /// Estimated sup error on the cube: trailing Chebyshev coefficients plus
  /// the sampled error estimates amplified by the Lebesgue constant.
  double error() const { return error_; }
  double half_width() const { return half_width_; }
  double sup_abs() const { return sup_abs_; }
  int dim() const { return n_; }

 private:
  int n_ = 1;
  int nodes_ = 0;
  double half_width_ = 1.0;
  double error_ = 0.0;
  double sup_abs_ = 0.0;
  std::vector<double> x_;
  std::vector<double> w_;
  std::vector<double> values_;
};

}  // namespace nlk
