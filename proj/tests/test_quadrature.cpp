// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "nlk/function.hpp"
#include "nlk/quadrature.hpp"

using namespace nlk;

TEST_CASE("unit ball measure") {
  QuadratureConfig cfg;
  auto one = [](const Point&) { return Estimate{1.0}; };
  CHECK(integrate_ball(1, one, {}, 1.0, cfg).value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(integrate_ball(2, one, {}, 1.0, cfg).value == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(integrate_ball(3, one, {}, 1.0, cfg).value == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-12));
}

TEST_CASE("sphere area") {
  CHECK(sphere_area(1) == 2.0);
  CHECK(sphere_area(2) == doctest::Approx(2.0 * kPi));
  CHECK(sphere_area(3) == doctest::Approx(4.0 * kPi));
}

TEST_CASE("exterior power integrals") {
  QuadratureConfig cfg;
  for (int n = 1; n <= 3; ++n) {
    const double a = 0.7;
    auto f = [&](const Point& y) { return Estimate{std::pow(norm(y), -n - a)}; };
    const Estimate e = integrate_exterior(n, f, 2.0, a, cfg);
    CAPTURE(n);
    CHECK(e.value == doctest::Approx(sphere_area(n) * std::pow(2.0, -a) / a).epsilon(1e-8));
    CHECK(e.error < 1e-6);
  }
}

TEST_CASE("off-centre ball with a radial break") {
  QuadratureConfig cfg;
  // Measure of {1 <= |y| < 2} in R^2, integrated about an off-centre point.
  auto ind = [](const Point& y) {
    const double r = norm(y);
    return Estimate{r >= 1.0 && r < 2.0 ? 1.0 : 0.0};
  };
  Region reg;
  reg.inner = 1.0;
  reg.outer = 2.0;
  reg.breaks = {{1.0}, {2.0}};
  CHECK(integrate_about(2, {0.3, -0.2, 0}, reg, ind, cfg).value == doctest::Approx(3.0 * kPi).epsilon(1e-8));
}

TEST_CASE("principal-value second difference of a quadratic") {
  QuadratureConfig cfg;
  // u = y^2: the second difference is 2 z^2, so the value is -2 delta^{2-2s} / (2-2s).
  const FunctionHandle u = fn::monomial(MultiIndex(1, {2, 0, 0}));
  for (double s : {0.2, 0.5, 0.8}) {
    const double delta = 0.1;
    CAPTURE(s);
    CHECK(pv_second_difference(u, {0.3, 0, 0}, s, delta, cfg).value ==
          doctest::Approx(-2.0 * std::pow(delta, 2 - 2 * s) / (2 - 2 * s)).epsilon(1e-9));
  }
}

TEST_CASE("config validation") {
  QuadratureConfig cfg;
  cfg.rel_tol = -1.0;
  CHECK_THROWS(cfg.validate());
  QuadratureConfig scaled = QuadratureConfig{}.scaled(10.0);
  CHECK(scaled.rel_tol == doctest::Approx(1e-7));
}
