// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

// Reference values come from tests/oracles/golden.py unless stated.

#include <cmath>
#include <string>

#include "doctest.h"
#include "nlk/error.hpp"
#include "nlk/function.hpp"
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

MultiIndex e1(int n, int power) { return MultiIndex(n, {power, 0, 0}); }

}  // namespace

TEST_CASE("classical operator of a gaussian") {
  QuadratureConfig cfg;
  const Estimate a = classical_flap(fn::gaussian(1, {}, 1.0, 1.0), {0.3, 0, 0}, params(1, 0.3, 0, true), cfg);
  CHECK(a.value == doctest::Approx(0.75199416428623768713).epsilon(1e-8));
  CHECK(a.error < 1e-7);
  // Closed form 2^s Gamma(n/2+s) / Gamma(n/2) at the origin.
  const Estimate b = classical_flap(fn::gaussian(2, {}, 1.0, 1.0), {}, params(2, 0.5, 0, true), cfg);
  CHECK(b.value == doctest::Approx(1.2533141373155002512).epsilon(1e-8));
}

TEST_CASE("getoor profile has constant image") {
  QuadratureConfig cfg;
  for (int n : {1, 2}) {
    const FracParams p = params(n, 0.4, 0, true);
    const FunctionHandle u = fn::getoor_profile(n, p.s);
    for (double t : {0.0, 0.5, -0.8}) {
      CAPTURE(n);
      CAPTURE(t);
      CHECK(classical_flap(u, {t, 0, 0}, p, cfg).value ==
            doctest::Approx(kernels::getoor_const(n, p.s)).epsilon(1e-6));
    }
  }
}

TEST_CASE("compensated operator of growing functions") {
  QuadratureConfig cfg;
  CHECK(divergent_flap(fn::monomial(e1(1, 2)), {0.3, 0, 0}, params(1, 0.5, 2), cfg).value ==
        doctest::Approx(-4.0).epsilon(1e-9));
  CHECK(divergent_flap(fn::monomial(e1(1, 3)), {-0.4, 0, 0}, params(1, 0.5, 3), cfg).value ==
        doctest::Approx(3.2).epsilon(1e-9));
  CHECK(divergent_flap(fn::power_tail(1, 1.2, 2.0, 3.0), {0.25, 0, 0}, params(1, 0.3, 2), cfg).value ==
        doctest::Approx(-0.052172471947975264434).epsilon(1e-9));
  // Normalization multiplies by c(n,s).
  const double raw = divergent_flap(fn::monomial(e1(1, 2)), {0.3, 0, 0}, params(1, 0.5, 2), cfg).value;
  const double nrm = divergent_flap(fn::monomial(e1(1, 2)), {0.3, 0, 0}, params(1, 0.5, 2, true), cfg).value;
  CHECK(nrm == doctest::Approx(raw * kernels::normalization_const(1, 0.5)).epsilon(1e-12));
}

TEST_CASE("classical and compensated operators differ by a polynomial of degree < k") {
  QuadratureConfig cfg;
  const FunctionHandle u = fn::gaussian(2, {0.4, -0.2, 0}, 0.8, 1.0);
  const std::vector<Point> grid = chebyshev_grid(2, 4, 0.5);
  for (int k = 1; k <= 3; ++k) {
    const FracParams p = params(2, 0.4, k);
    std::vector<double> a, b;
    for (const Point& x : grid) {
      a.push_back(classical_flap(u, x, p, cfg).value);
      b.push_back(divergent_flap(u, x, p, cfg).value);
    }
    CAPTURE(k);
    CHECK(mod_poly_distance(2, grid, a, b, k - 1).residual < 1e-7);
    if (k == 1) CHECK(mod_poly_distance(2, grid, a, b, -1).residual > 1e-4);
  }
}

TEST_CASE("class and domain violations") {
  QuadratureConfig cfg;
  const FunctionHandle u = fn::monomial(e1(1, 2));
  try {
    divergent_flap(u, {0.1, 0, 0}, params(1, 0.5, 1), cfg);
    FAIL("expected kNotInUk");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotInUk);
    CHECK(std::string(e.what()).find("tail growth condition") != std::string::npos);
  }
  try {
    classical_flap(u, {0.1, 0, 0}, params(1, 0.5, 2), cfg);
    FAIL("expected kTailDivergent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kTailDivergent);
  }
  CHECK_THROWS_AS(divergent_flap(u, {1.0, 0, 0}, params(1, 0.5, 2), cfg), Error);
  CHECK_THROWS_AS(divergent_flap(fn::monomial(MultiIndex(2, {1, 0, 0})), {0.1, 0, 0}, params(1, 0.5, 2), cfg), Error);
}

TEST_CASE("tail integral") {
  QuadratureConfig cfg;
  // int_{|y|>R} y^2 |y|^{-4} dy = 2 / R.
  CHECK(tail_integral(fn::monomial(e1(1, 2)), 4.0, params(1, 0.5, 2), cfg).value ==
        doctest::Approx(0.5).epsilon(1e-9));
  // Compact support inside B_R gives zero.
  CHECK(tail_integral(fn::compact_bump(2, {}, 1.0, 1.0), 3.0, params(2, 0.5, 1), cfg).value == 0.0);
}

TEST_CASE("truncations approach the compensated operator") {
  QuadratureConfig cfg;
  const FunctionHandle u = fn::power_tail(1, 1.5, 2.0, 3.0);
  const FracParams p = params(1, 0.5, 2);
  const std::vector<Point> grid = chebyshev_grid(1, 5, 0.5);
  double prev = INFINITY;
  for (double R : {8.0, 16.0, 32.0}) {
    const TruncationReport rep = truncated_flap(u, grid, R, p, cfg);
    CAPTURE(R);
    CHECK(rep.residual_to_limit < prev);
    CHECK(rep.residual_to_limit <= 2.0 * kernels::psi_bound(p) * tail_integral(u, R, p, cfg).value);
    prev = rep.residual_to_limit;
  }
}

TEST_CASE("polynomial distance") {
  const std::vector<Point> grid = chebyshev_grid(2, 5, 0.5);
  std::vector<double> f, zero(grid.size(), 0.0);
  for (const Point& x : grid) f.push_back(1.0 + 2.0 * x[0] - x[0] * x[1]);
  CHECK(mod_poly_distance(2, grid, f, zero, 2).residual < 1e-12);
  CHECK(mod_poly_distance(2, grid, f, zero, 1).residual > 1e-3);
}

TEST_CASE("dimension counts") {
  for (int k = 0; k <= 6; ++k) {
    CHECK(count_Nk(1, k) == static_cast<std::uint64_t>(k));
    CHECK(count_Nk(2, k) == static_cast<std::uint64_t>(k * (k + 1) / 2));
    CHECK(count_Nk(3, k) == static_cast<std::uint64_t>(k * (k + 1) * (k + 2) / 6));
  }
  CHECK(admissible_degree(params(1, 0.5, 2)) == 2);
  CHECK(admissible_degree(params(1, 0.6, 2)) == 3);
}
