// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

// Reference values come from tests/oracles/golden.py (mpmath, 40 digits).

#include <cmath>
#include <random>

#include "doctest.h"
#include "nlk/error.hpp"
#include "nlk/kernels.hpp"

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

TEST_CASE("riesz kernel") {
  FracParams p;
  CHECK(kernels::riesz_kernel(p, {0, 0, 0}, {2, 0, 0}) == doctest::Approx(0.25));
  p.normalized = true;
  CHECK(kernels::riesz_kernel(p, {0, 0, 0}, {2, 0, 0}) == doctest::Approx(0.25 / kPi).epsilon(1e-14));
}

TEST_CASE("constants against mpmath") {
  struct Row {
    int n;
    double s, c, poisson, green, getoor;
  };
  const Row rows[] = {
      {1, 0.3, 0.23009638168163210465, 0.2575181074002419325, 0.073719767650289133634, 0.89351534928769026144},
      {2, 0.5, 0.15915494309189533577, 0.10132118364233777144, 0.050660591821168885722, 1.5707963267948966192},
      {3, 0.75, 0.11905056737670181835, 0.035822448015672266429, 0.037472058136165959402, 3.3233509704478425512},
  };
  for (const auto& r : rows) {
    CAPTURE(r.n);
    CHECK(kernels::normalization_const(r.n, r.s) == doctest::Approx(r.c).epsilon(1e-13));
    CHECK(kernels::poisson_const(r.n, r.s) == doctest::Approx(r.poisson).epsilon(1e-13));
    CHECK(kernels::green_const(r.n, r.s) == doctest::Approx(r.green).epsilon(1e-13));
    CHECK(kernels::getoor_const(r.n, r.s) == doctest::Approx(r.getoor).epsilon(1e-13));
  }
}

TEST_CASE("kernel x-derivatives at the origin") {
  CHECK(kernels::kernel_x_derivative(params(2, 0.4), MultiIndex(2, {1, 1, 0}), {2, 1, 0}) ==
        doctest::Approx(0.11296170781179722131).epsilon(1e-12));
  CHECK(kernels::kernel_x_derivative(params(3, 0.3), MultiIndex(3, {2, 0, 1}), {1, 2, 2}) ==
        doctest::Approx(-0.0014834896265199109704).epsilon(1e-12));
  // d^2/dx^2 |x - 3|^{-2} at 0 = 6 / 81.
  CHECK(kernels::kernel_x_derivative(params(1, 0.5), MultiIndex(1, {2, 0, 0}), {3, 0, 0}) ==
        doctest::Approx(6.0 / 81.0).epsilon(1e-14));
}

TEST_CASE("taylor remainder") {
  CHECK(kernels::taylor_remainder(params(1, 0.5, 2), {0.4, 0, 0}, {3, 0, 0}) ==
        doctest::Approx(0.0071882533420994959456).epsilon(1e-12));
  CHECK(kernels::taylor_remainder(params(2, 0.3, 3), {0.3, 0.2, 0}, {1.5, -2, 0}) ==
        doctest::Approx(-0.000032173928509788420395).epsilon(1e-10));
  // Small |x| / |y| goes through the Gegenbauer series.
  CHECK(kernels::taylor_remainder(params(2, 0.3, 3), {0.05, 0.02, 0}, {2, 1, 0}) ==
        doctest::Approx(0.000012590985230945995642).epsilon(1e-10));
  CHECK(kernels::taylor_remainder(params(3, 0.7, 2), {0.1, -0.2, 0.05}, {0, 3, 1}) ==
        doctest::Approx(0.00018076405389001190688).epsilon(1e-10));
}

TEST_CASE("taylor remainder: series and explicit branches agree") {
  // |x| = |y| / 2 is the branch switch; both sides must be continuous.
  for (int k = 0; k <= 4; ++k) {
    const FracParams p = params(2, 0.35, k);
    const Point y{2.4, -1.1, 0};
    const double half = 0.5 * norm(y);
    const Point dir{0.6, 0.8, 0};
    const Point below{dir[0] * half * (1 - 1e-9), dir[1] * half * (1 - 1e-9), 0};
    const Point above{dir[0] * half * (1 + 1e-9), dir[1] * half * (1 + 1e-9), 0};
    CAPTURE(k);
    CHECK(kernels::taylor_remainder(p, below, y) ==
          doctest::Approx(kernels::taylor_remainder(p, above, y)).epsilon(1e-7));
  }
}

TEST_CASE("psi is rotation invariant") {
  const FracParams p = params(3, 0.4, 2);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int t = 0; t < 20; ++t) {
    const Point x{0.3 * g(rng) / 3, 0.3 * g(rng) / 3, 0.3 * g(rng) / 3};
    const Point y{2 + std::abs(g(rng)), g(rng), g(rng)};
    if (norm(x) >= 1.0) continue;
    const double cosang = dot(x, y) / (norm(x) * norm(y));
    CHECK(kernels::psi(p, x, y) == doctest::Approx(kernels::psi_invariant(p, norm(x), norm(y), cosang)).epsilon(1e-9));
  }
}

TEST_CASE("psi bound dominates sampled psi") {
  const FracParams p = params(1, 0.5, 2);
  const double bound = kernels::psi_bound(p);
  CHECK(bound > 0.0);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ux(-0.99, 0.99), uy(2.0, 500.0);
  for (int t = 0; t < 1000; ++t) {
    const double y = uy(rng) * (t % 2 ? 1 : -1);
    CHECK(std::abs(kernels::psi(p, {ux(rng), 0, 0}, {y, 0, 0})) <= bound * (1 + 1e-6));
  }
}

TEST_CASE("green inner integral and green function") {
  CHECK(kernels::green_inner_integral(1, 0.3, 2.5) == doctest::Approx(3.705893380739329895).epsilon(1e-12));
  CHECK(kernels::green_inner_integral(3, 0.7, 0.4) == doctest::Approx(0.61014387415524237877).epsilon(1e-12));
  CHECK(kernels::green_inner_integral(2, 0.5, 10) == doctest::Approx(2.5290379152504543263).epsilon(1e-12));
  CHECK(kernels::green_ball(params(1, 0.3, 0, true), 1.0, {0.2, 0, 0}, {-0.5, 0, 0}) ==
        doctest::Approx(0.28297386096605729851).epsilon(1e-12));
  // Symmetry in (x, y).
  const FracParams p = params(2, 0.6, 0, true);
  CHECK(kernels::green_ball(p, 1.5, {0.2, 0.4, 0}, {-0.7, 0.1, 0}) ==
        doctest::Approx(kernels::green_ball(p, 1.5, {-0.7, 0.1, 0}, {0.2, 0.4, 0})).epsilon(1e-13));
}

TEST_CASE("poisson kernel") {
  const FracParams p = params(1, 0.5);
  // C (1/(y^2-1))^{1/2} / |y| at x = 0, y = 2.
  CHECK(kernels::poisson_kernel_ball(p, 1.0, {0, 0, 0}, {2, 0, 0}) ==
        doctest::Approx(1.0 / kPi / std::sqrt(3.0) / 2.0).epsilon(1e-14));
  // Scaling: P_r(x, y) = r^{-n} P_1(x/r, y/r).
  const FracParams q = params(3, 0.3);
  CHECK(kernels::poisson_kernel_ball(q, 2.0, {0.4, 0.2, -0.6}, {1.0, 3.0, 0.5}) ==
        doctest::Approx(kernels::poisson_kernel_ball(q, 1.0, {0.2, 0.1, -0.3}, {0.5, 1.5, 0.25}) / 8.0)
            .epsilon(1e-13));
  CHECK_THROWS_AS(kernels::poisson_kernel_ball(p, 1.0, {0.5, 0, 0}, {0.9, 0, 0}), Error);
}
