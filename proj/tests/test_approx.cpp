// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "nlk/approx.hpp"
#include "nlk/error.hpp"
#include "nlk/grid.hpp"

using namespace nlk;

namespace {

FracParams params(int n, double s, int k = 0) {
  FracParams p;
  p.n = n;
  p.s = s;
  p.k = k;
  return p;
}

ShadowConfig fast_config() {
  ShadowConfig sc;
  sc.compute_harmonicity = false;
  sc.pole_study = {};
  return sc;
}

}  // namespace

TEST_CASE("dictionary layout") {
  const Dictionary d16 = make_dictionary(1, 0.5, 16, 8.0);
  const Dictionary d32 = make_dictionary(1, 0.5, 32, 8.0);
  for (const Point& y : d32.poles) {
    CHECK(norm(y) > 1.0);
    CHECK(norm(y) < 8.0);
  }
  for (const Point& y : d16.poles) {
    const bool found = std::any_of(d32.poles.begin(), d32.poles.end(),
                                   [&](const Point& z) { return distance(y, z) < 1e-12; });
    CHECK(found);
  }
  const Dictionary a = make_dictionary(2, 0.5, 10, 4.0);
  const Dictionary b = make_dictionary(2, 0.5, 20, 4.0);
  for (std::size_t j = 0; j < a.size(); ++j) CHECK(distance(a.poles[j], b.poles[j]) == 0.0);
  CHECK_THROWS_AS(make_dictionary(1, 0.5, 7, 8.0), Error);
}

TEST_CASE("exact recovery of a dictionary combination") {
  const Dictionary d = make_dictionary(1, 0.5, 4, 8.0);
  const std::vector<double> w0 = {0.7, -1.2, 0.4, 2.0};
  const FunctionHandle target = dictionary_field(d, w0);
  const FitTarget t = sample_target(target, chebyshev_grid(1, 33, 1.0), 0);
  const FitResult fr = fit_sharmonic(t, d, 0.0);
  CHECK(fr.rank == 4);
  CHECK(fr.fit_error < 1e-10);
  for (std::size_t j = 0; j < w0.size(); ++j) CHECK(fr.weights[j] == doctest::Approx(w0[j]).epsilon(1e-8));
}

TEST_CASE("zero target fits to zero") {
  const Dictionary d = make_dictionary(2, 0.4, 12, 4.0);
  const FitTarget t = sample_target(fn::zero(2), chebyshev_grid(2, 9, 1.0), 1);
  const FitResult fr = fit_sharmonic(t, d, 1e-10);
  CHECK(fr.fit_error == 0.0);
  for (double w : fr.weights) CHECK(w == 0.0);
}

TEST_CASE("ridge-free fit of a rank-deficient system is refused") {
  // More poles than sample points.
  const Dictionary d = make_dictionary(1, 0.5, 16, 8.0);
  const FitTarget t = sample_target(fn::monomial(MultiIndex(1, {2, 0, 0})), chebyshev_grid(1, 5, 1.0), 0);
  CHECK_THROWS_AS(fit_sharmonic(t, d, 0.0), Error);
  CHECK_NOTHROW(fit_sharmonic(t, d, 1e-8));
}

TEST_CASE("fit error falls as the dictionary grows") {
  const FitTarget t = sample_target(fn::monomial(MultiIndex(1, {2, 0, 0})), chebyshev_grid(1, 33, 1.0), 0);
  double prev = INFINITY;
  for (int count : {16, 32, 64}) {
    const FitResult fr = fit_sharmonic(t, make_dictionary(1, 0.5, count, 8.0), 1e-10);
    CAPTURE(count);
    MESSAGE("poles " << count << " fit error " << fr.fit_error);
    CHECK(fr.fit_error < prev);
    prev = fr.fit_error;
  }
}

TEST_CASE("derivative pack") {
  CHECK(derivative_pack_size(1, 0) == 2);
  CHECK(derivative_pack_size(1, 2) == 4);
  CHECK(derivative_pack_size(2, 1) == 5);
  CHECK(derivative_pack_size(3, 2) == 16);
  const std::vector<double> z = derivative_pack(fn::monomial(MultiIndex(1, {2, 0, 0})), {0.5, 0, 0}, 2);
  REQUIRE(z.size() == 4);
  CHECK(z[0] == 0.5);
  CHECK(z[1] == doctest::Approx(0.25));
  CHECK(z[2] == doctest::Approx(1.0));
  CHECK(z[3] == doctest::Approx(2.0));
  // Mixed partials of x y in 2-D: d_xy = d_yx = 1.
  const std::vector<double> w = derivative_pack(fn::monomial(MultiIndex(2, {1, 1, 0})), {0.2, 0.3, 0}, 2);
  REQUIRE(w.size() == 2 + 1 + 2 + 4);
  CHECK(w[2] == doctest::Approx(0.06));
  CHECK(w[3] == doctest::Approx(0.3));
  CHECK(w[4] == doctest::Approx(0.2));
  CHECK(w[6] == doctest::Approx(1.0));
  CHECK(w[7] == doctest::Approx(1.0));
}

TEST_CASE("harmonic shadow agrees with u far out") {
  QuadratureConfig cfg;
  const FracParams p = params(1, 0.5, 3);
  const FunctionHandle u = fn::monomial(MultiIndex(1, {2, 0, 0}));
  const ApproxReport rep = shadow_harmonic(u, 0, 0.1, p, cfg, fast_config());
  CHECK(rep.achieved);
  CHECK(rep.achieved_cm_error <= 0.1);
  CHECK(rep.R_eps == doctest::Approx(rep.rho + rep.Rbar));
  for (double f : {1.01, 2.0, 7.5}) {
    const double x = f * rep.R_eps;
    CHECK(rep.u_eps({x, 0, 0}) == u({x, 0, 0}));
    CHECK(rep.u_eps({-x, 0, 0}) == u({-x, 0, 0}));
  }
}

TEST_CASE("lipschitz estimate") {
  const Nonlinearity F = nonlinearity::sin_composite(2.0, {0.0, 1.0});
  REQUIRE(F.lipschitz.has_value());
  CHECK(*F.lipschitz == doctest::Approx(2.0));
  const double est = estimate_lipschitz(F, 2, 3.0);
  CHECK(est <= 2.0 + 1e-6);
  CHECK(est >= 1.9);
  CHECK(estimate_lipschitz(nonlinearity::zero(), 2, 3.0) == 0.0);
}

TEST_CASE("zero nonlinearity reduces to the harmonic shadow") {
  QuadratureConfig cfg;
  const FracParams p = params(1, 0.5, 3);
  const FunctionHandle u = fn::monomial(MultiIndex(1, {2, 0, 0}));
  const NonlinearReport rep = nonlinear_shadow(u, nonlinearity::zero(), 0, 0.1, p, cfg, fast_config());
  CHECK(rep.eta_sup == 0.0);
  CHECK(rep.bound_holds);
  const ApproxReport direct = shadow_harmonic(u, 0, 0.1, p, cfg, fast_config());
  for (double x : {-0.7, 0.0, 0.4})
    CHECK(rep.u_eps({x, 0, 0}) == doctest::Approx(direct.u_eps({x, 0, 0})).epsilon(1e-9));
}

TEST_CASE("nonlinear shadow bound") {
  QuadratureConfig cfg;
  const FracParams p = params(1, 0.5, 3);
  const NonlinearReport rep = nonlinear_shadow(fn::monomial(MultiIndex(1, {2, 0, 0})),
                                               nonlinearity::sin_composite(1.0, {0.0, 1.0}), 0, 0.1, p, cfg,
                                               fast_config());
  CHECK(rep.derivative_terms == 1);
  CHECK(rep.lipschitz_declared);
  CHECK(rep.bound_holds);
  CHECK(rep.eta_sup <= rep.bound);
}
