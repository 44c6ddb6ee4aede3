// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlk/grid.hpp"

#include <cmath>

#include "nlk/error.hpp"

namespace nlk {

std::vector<double> chebyshev_nodes(int count) {
  require(count >= 1, ErrorCode::kInvalidArgument, "grid needs at least one point");
  std::vector<double> x(count);
  for (int j = 0; j < count; ++j) x[j] = -std::cos(kPi * (2.0 * j + 1.0) / (2.0 * count));
  return x;
}

std::vector<Point> chebyshev_grid(int n, int per_axis, double radius) {
  require(n >= 1 && n <= kMaxDim, ErrorCode::kInvalidArgument, "dimension must be 1, 2 or 3");
  require(radius > 0.0, ErrorCode::kInvalidArgument, "grid radius must be positive");
  const std::vector<double> t = chebyshev_nodes(per_axis);
  const double h = radius / std::sqrt(static_cast<double>(n));
  std::vector<Point> out;
  const int m1 = per_axis;
  const int m2 = n >= 2 ? per_axis : 1;
  const int m3 = n >= 3 ? per_axis : 1;
  out.reserve(static_cast<std::size_t>(m1) * m2 * m3);
  for (int i = 0; i < m1; ++i)
    for (int j = 0; j < m2; ++j)
      for (int l = 0; l < m3; ++l)
        out.push_back({h * t[i], n >= 2 ? h * t[j] : 0.0, n >= 3 ? h * t[l] : 0.0});
  return out;
}

int default_grid_size(int n) {
  switch (n) {
    case 1: return 33;
    case 2: return 13;
    default: return 9;
  }
}

}  // namespace nlk
