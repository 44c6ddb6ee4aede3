// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Independent checks: Monte Carlo estimates of standard Dirichlet solutions
// through the exit law of the 2s-stable process from a ball, and a
// polynomial fit by explicit normal equations.

#include <cstdint>
#include <random>
#include <vector>

#include "nlk/dirichlet.hpp"
#include "nlk/multi_index.hpp"
#include "nlk/operator.hpp"
#include "nlk/types.hpp"

namespace nlk {

struct McConfig {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  /// Independent generator streams; stream i is seeded from (seed, i).
  int streams = 64;

  void validate() const;
};

/// Acceptance probability of the exit sampler at x: the inverse of the
/// rejection bound ((r^2 - |x|^2)/r^2)^s (r / (r - |x|))^n.
double exit_acceptance_rate(int n, double s, double r, const Point& x);

/// One draw from the density P_r(x, .) on B_r^c. Proposals come from the
/// exit law at the centre, |y| = r / sqrt(T) with T ~ Beta(s, 1-s) and a
/// uniform direction, and are accepted with probability P_r(x,y) / (M P_r(0,y)).
/// Throws kSamplerDegenerate when the acceptance rate is below 1e-3.
Point sample_poisson_exit(const Point& x, double r, const FracParams& p, std::mt19937_64& rng);

struct McEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
  double boundary_mean = 0.0;
  /// Green (source) term, computed by quadrature.
  Estimate green;
  double acceptance_rate = 0.0;
  std::uint64_t samples = 0;
};

/// u(x) = E[g(Y)] + c int G_r(x,y) f(y) dy with Y ~ P_r(x, .). The datum must
/// have an integrable tail against the Poisson kernel; atoms are ignored.
McEstimate wos_estimate(const DirichletSpec& spec, const Point& x, const McConfig& mc, const FracParams& p,
                        const QuadratureConfig& cfg);

/// Least-squares polynomial fit of values - 0 through the assembled Gram
/// matrix and a pivoted LDL^T factorization. Residual is the max misfit.
PolyFit brute_poly_fit(int n, const std::vector<Point>& points, const std::vector<double>& values, int degree);

}  // namespace nlk
