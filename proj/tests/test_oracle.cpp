// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <random>

#include "doctest.h"
#include "nlk/error.hpp"
#include "nlk/grid.hpp"
#include "nlk/operator.hpp"
#include "nlk/oracle.hpp"

using namespace nlk;

namespace {

FracParams params(int n, double s) {
  FracParams p;
  p.n = n;
  p.s = s;
  return p;
}

McConfig mc(std::uint64_t samples, std::uint64_t seed = 1) {
  McConfig c;
  c.samples = samples;
  c.seed = seed;
  return c;
}

double chi2(const std::vector<double>& counts, const std::vector<double>& probs, double total) {
  double x = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double e = probs[i] * total;
    x += (counts[i] - e) * (counts[i] - e) / e;
  }
  return x;
}

}  // namespace

TEST_CASE("constant datum is reproduced without variance") {
  QuadratureConfig cfg;
  const McEstimate e = wos_estimate({1.0, fn::zero(1), fn::constant(1, 1.0)}, {0.4, 0, 0}, mc(5000), params(1, 0.5), cfg);
  CHECK(e.estimate == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e.stderr_ == 0.0);
}

TEST_CASE("acceptance rate") {
  CHECK(exit_acceptance_rate(2, 0.5, 1.0, {}) == doctest::Approx(1.0));
  CHECK(exit_acceptance_rate(1, 0.5, 1.0, {0.5, 0, 0}) == doctest::Approx(1.0 / (std::sqrt(0.75) * 2.0)).epsilon(1e-12));
}

TEST_CASE("exit law from the centre matches the Beta radial law") {
  // |y| = 1 / sqrt(T), T ~ Beta(s, 1-s); ten equiprobable bins in T.
  const FracParams p = params(2, 0.3);
  std::mt19937_64 rng(2024);
  const int bins = 10, total = 20000;
  std::vector<double> edges;
  for (int i = 1; i < bins; ++i) edges.push_back(boost::math::ibeta_inv(p.s, 1 - p.s, double(i) / bins));
  std::vector<double> counts(bins, 0.0);
  for (int i = 0; i < total; ++i) {
    const Point y = sample_poisson_exit({}, 1.0, p, rng);
    const double t = 1.0 / norm2(y);
    counts[std::upper_bound(edges.begin(), edges.end(), t) - edges.begin()] += 1;
  }
  // 9 degrees of freedom, 0.1% critical value 27.88.
  CHECK(chi2(counts, std::vector<double>(bins, 1.0 / bins), total) < 27.88);
}

TEST_CASE("exit law off-centre matches quadrature bin masses") {
  // Bin masses of P_1(0.5, .) for n = 1, s = 1/2 from tests/oracles/golden.py.
  const std::vector<double> probs = {0.086581618904483472, 0.085890467918517373, 0.16086124651033249,
                                     0.41956937674483376,  0.14452484010414118,  0.10257244981769174};
  const double edges[] = {-3.0, -1.5, 0.0, 1.5, 3.0};
  std::mt19937_64 rng(77);
  const int total = 20000;
  std::vector<double> counts(6, 0.0);
  for (int i = 0; i < total; ++i) {
    const double y = sample_poisson_exit({0.5, 0, 0}, 1.0, params(1, 0.5), rng)[0];
    REQUIRE(std::abs(y) >= 1.0);
    counts[std::upper_bound(std::begin(edges), std::end(edges), y) - std::begin(edges)] += 1;
  }
  // 5 degrees of freedom, 0.1% critical value 20.52.
  CHECK(chi2(counts, probs, total) < 20.52);
}

TEST_CASE("estimates are reproducible and seed dependent") {
  QuadratureConfig cfg;
  const DirichletSpec spec{1.0, fn::zero(1), fn::annulus_indicator(1, 1.0, 2.0)};
  const McEstimate a = wos_estimate(spec, {0.3, 0, 0}, mc(4000, 9), params(1, 0.5), cfg);
  const McEstimate b = wos_estimate(spec, {0.3, 0, 0}, mc(4000, 9), params(1, 0.5), cfg);
  const McEstimate c = wos_estimate(spec, {0.3, 0, 0}, mc(4000, 10), params(1, 0.5), cfg);
  CHECK(a.estimate == b.estimate);
  CHECK(a.stderr_ == b.stderr_);
  CHECK(a.estimate != c.estimate);
}

TEST_CASE("standard error scales like one over root n") {
  QuadratureConfig cfg;
  const DirichletSpec spec{1.0, fn::zero(2), fn::annulus_indicator(2, 1.0, 2.0)};
  const McEstimate a = wos_estimate(spec, {0.2, 0.1, 0}, mc(4000, 3), params(2, 0.5), cfg);
  const McEstimate b = wos_estimate(spec, {0.2, 0.1, 0}, mc(16000, 3), params(2, 0.5), cfg);
  const double ratio = b.stderr_ / a.stderr_;
  CHECK(ratio > 0.4);
  CHECK(ratio < 0.6);
}

TEST_CASE("mirror points agree within the noise") {
  QuadratureConfig cfg;
  const DirichletSpec spec{1.0, fn::constant(1, 1.0), fn::annulus_indicator(1, 1.0, 2.0)};
  const McEstimate a = wos_estimate(spec, {0.4, 0, 0}, mc(20000, 4), params(1, 0.5), cfg);
  const McEstimate b = wos_estimate(spec, {-0.4, 0, 0}, mc(20000, 5), params(1, 0.5), cfg);
  CHECK(std::abs(a.estimate - b.estimate) < 4.0 * std::hypot(a.stderr_, b.stderr_));
  CHECK(a.green.value == doctest::Approx(b.green.value).epsilon(1e-8));
}

TEST_CASE("configuration checks") {
  McConfig c;
  c.samples = 10;
  CHECK_THROWS_AS(c.validate(), Error);
  QuadratureConfig cfg;
  CHECK_THROWS_AS(
      wos_estimate({1.0, fn::zero(1), fn::zero(1)}, {1.2, 0, 0}, mc(2000), params(1, 0.5), cfg), Error);
}

TEST_CASE("brute-force polynomial fit agrees with the least-squares route") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n = 1; n <= 3; ++n) {
    const std::vector<Point> grid = chebyshev_grid(n, n == 3 ? 4 : 6, 0.5);
    std::vector<double> f, zero(grid.size(), 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) f.push_back(u(rng));
    for (int d = 0; d <= 2; ++d) {
      CAPTURE(n);
      CAPTURE(d);
      CHECK(brute_poly_fit(n, grid, f, d).residual ==
            doctest::Approx(mod_poly_distance(n, grid, f, zero, d).residual).epsilon(1e-8));
    }
  }
}
