// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

// Reference values come from tests/oracles/golden.py unless stated.

#include <cmath>

#include "doctest.h"
#include "nlk/dirichlet.hpp"
#include "nlk/error.hpp"
#include "nlk/grid.hpp"
#include "nlk/kernels.hpp"
#include "nlk/operator.hpp"

using namespace nlk;

namespace {

FracParams params(int n, double s, int k = 0, bool normalized = false) {
  FracParams p;
  p.n = n;
  p.s = s;
  p.k = k;
  p.normalized = normalized;
  return p;
}

}  // namespace

TEST_CASE("poisson integrals of exterior data") {
  QuadratureConfig cfg;
  const SolutionField a =
      solve_standard(1.0, fn::zero(1), fn::annulus_indicator(1, 1.0, 2.0), params(1, 0.5), cfg);
  CHECK(a.u({0.3, 0, 0}) == doctest::Approx(0.67951016400738643031).epsilon(1e-9));
  const SolutionField b = solve_standard(1.0, fn::zero(1), fn::gaussian(1, {}, 1.0, 1.0), params(1, 0.3), cfg);
  CHECK(b.u({-0.6, 0, 0}) == doctest::Approx(0.21876396581406025748).epsilon(1e-9));
  // Outside the ball the solution is the datum.
  CHECK(b.u({1.7, 0, 0}) == doctest::Approx(std::exp(-0.5 * 1.7 * 1.7)).epsilon(1e-14));
}

TEST_CASE("constant source gives the getoor profile") {
  QuadratureConfig cfg;
  for (bool normalized : {true, false}) {
    const FracParams p = params(2, 0.4, 0, normalized);
    const SolutionField sol = solve_standard(1.0, fn::constant(2, 1.0), fn::zero(2), p, cfg);
    const double scale = normalized ? 1.0 : kernels::normalization_const(2, 0.4);
    for (const Point& x : {Point{0, 0, 0}, Point{0.3, -0.4, 0}}) {
      CAPTURE(normalized);
      CHECK(sol.u(x) ==
            doctest::Approx(scale * std::pow(1 - norm2(x), 0.4) / kernels::getoor_const(2, 0.4)).epsilon(1e-7));
    }
  }
}

TEST_CASE("near-boundary values are flagged") {
  QuadratureConfig cfg;
  const SolutionField sol = solve_standard(1.0, fn::constant(1, 1.0), fn::zero(1), params(1, 0.5), cfg);
  CHECK(sol.u.estimate({0.5, 0, 0}).converged);
  CHECK_FALSE(sol.u.estimate({0.97, 0, 0}).converged);
}

TEST_CASE("solution of a compensated problem satisfies its equation") {
  QuadratureConfig cfg;
  const FracParams p = params(1, 0.5, 2);
  const SolutionField sol = solve_divergent({1.0, fn::zero(1), fn::monomial(MultiIndex(1, {2, 0, 0}))}, p, cfg);
  const std::vector<Point> grid = chebyshev_grid(1, 4, 0.5);
  std::vector<double> lhs, zero(grid.size(), 0.0);
  for (const Point& x : grid) lhs.push_back(divergent_flap(sol.u, x, p, cfg).value);
  CHECK(mod_poly_distance(1, grid, lhs, zero, admissible_degree(p)).residual < 1e-5);
  // The exterior datum is kept verbatim.
  CHECK(sol.u({5.0, 0, 0}) == doctest::Approx(25.0));
}

TEST_CASE("monomial source solutions") {
  QuadratureConfig cfg;
  const FracParams p = params(1, 0.5, 1, true);
  const SolutionField u1 = monomial_source_solution(Polynomial::monomial(MultiIndex(1, {0, 0, 0})), p, cfg);
  CHECK(u1.u({0.2, 0, 0}) == doctest::Approx(std::sqrt(1 - 0.04) / kernels::getoor_const(1, 0.5)).epsilon(1e-7));
  CHECK(u1.u({1.5, 0, 0}) == 0.0);
  CHECK_THROWS_AS(monomial_source_solution(Polynomial::monomial(MultiIndex(1, {1, 0, 0})), p, cfg), Error);
}

TEST_CASE("chebyshev cache reproduces smooth sources") {
  const FunctionHandle f = fn::gaussian(2, {0.3, 0.1, 0}, 0.7, 2.0);
  const FunctionHandle c = chebyshev_cached(f, 1.0, 24);
  for (const Point& x : chebyshev_grid(2, 7, 0.95)) CHECK(c(x) == doctest::Approx(f(x)).epsilon(1e-9));
  CHECK(c({1.2, 0, 0}) == 0.0);
}
