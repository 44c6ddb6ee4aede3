// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "nlk/types.hpp"

namespace nlk {

/// Chebyshev points of the first kind on [-1, 1], in increasing order.
std::vector<double> chebyshev_nodes(int count);

/// Evaluation grid inside B_radius: Chebyshev points on [-radius, radius]
/// for n = 1, and their tensor product scaled into the inscribed cube for
/// n >= 2.
std::vector<Point> chebyshev_grid(int n, int per_axis, double radius);

/// Default points per axis: 33, 13 and 9 for n = 1, 2, 3.
int default_grid_size(int n);

}  // namespace nlk
