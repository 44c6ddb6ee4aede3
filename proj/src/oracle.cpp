// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlk/oracle.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "nlk/error.hpp"
#include "nlk/kernels.hpp"
#include "nlk/parallel.hpp"

namespace nlk {

namespace {

Point random_direction(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  if (n == 1) return {unif(rng) < 0.5 ? -1.0 : 1.0, 0.0, 0.0};
  if (n == 2) {
    const double t = 2.0 * kPi * unif(rng);
    return {std::cos(t), std::sin(t), 0.0};
  }
  const double z = 2.0 * unif(rng) - 1.0;
  const double t = 2.0 * kPi * unif(rng);
  const double q = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {q * std::cos(t), q * std::sin(t), z};
}

// Running mean and sum of squared deviations (Welford).
struct Moments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double v) {
    ++count;
    const double d = v - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (v - mean);
  }
  void merge(const Moments& o) {
    if (o.count == 0) return;
    const double total = static_cast<double>(count + o.count);
    const double d = o.mean - mean;
    mean += d * static_cast<double>(o.count) / total;
    m2 += o.m2 + d * d * static_cast<double>(count) * static_cast<double>(o.count) / total;
    count += o.count;
  }
};

}  // namespace

void McConfig::validate() const {
  require(samples >= 1000, ErrorCode::kInvalidArgument, "Monte Carlo needs at least 1000 samples");
  require(streams >= 1, ErrorCode::kInvalidArgument, "at least one generator stream is required");
}

double exit_acceptance_rate(int n, double s, double r, const Point& x) {
  const double rx = norm(x);
  require(rx < r, ErrorCode::kDomain, "exit sampler needs a start point inside the ball");
  const double bound = std::pow(1.0 - rx * rx / (r * r), s) * std::pow(r / (r - rx), n);
  return 1.0 / bound;
}

Point sample_poisson_exit(const Point& x, double r, const FracParams& p, std::mt19937_64& rng) {
  const double accept = exit_acceptance_rate(p.n, p.s, r, x);
  require(accept >= 1e-3, ErrorCode::kSamplerDegenerate,
          "exit sampler acceptance rate " + std::to_string(accept) + " below 1e-3; start point too close to the boundary");
  const double rx2 = norm2(x);
  std::gamma_distribution<double> ga(p.s, 1.0);
  std::gamma_distribution<double> gb(1.0 - p.s, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  while (true) {
    double a = ga(rng);
    double b = gb(rng);
    if (!(a > 0.0) || !(a + b > 0.0)) continue;
    const double t = a / (a + b);
    const double rho = r / std::sqrt(t);
    if (!(rho > r) || !std::isfinite(rho)) continue;
    const Point y = rho * random_direction(p.n, rng);
    // P_r(x,y) / P_r(0,y) = ((r^2 - |x|^2) / r^2)^s (|y| / |x-y|)^n
    const double ratio = std::pow(1.0 - rx2 / (r * r), p.s) * std::pow(rho / distance(x, y), p.n);
    if (unif(rng) * (1.0 / accept) <= ratio) return y;
  }
}

McEstimate wos_estimate(const DirichletSpec& spec, const Point& x, const McConfig& mc, const FracParams& p,
                        const QuadratureConfig& cfg) {
  p.validate();
  mc.validate();
  const double r = spec.radius;
  require(norm(x) < r, ErrorCode::kDomain, "estimate point must lie inside the ball");
  require(spec.source.valid() && spec.exterior.valid(), ErrorCode::kInvalidArgument, "spec needs source and exterior");
  const auto& gt = spec.exterior.traits();
  require(!std::isfinite(gt.tail_exponent) || gt.tail_exponent < 2.0 * p.s || std::isfinite(gt.support_radius),
          ErrorCode::kTailDivergent, gt.name + ": exterior datum is not integrable against the exit law");

  McEstimate out;
  out.samples = mc.samples;
  out.acceptance_rate = exit_acceptance_rate(p.n, p.s, r, x);
  const auto streams = static_cast<std::uint64_t>(mc.streams);
  std::vector<Moments> parts(streams);
  if (!spec.exterior.is_zero()) {
    const FunctionHandle g = spec.exterior;
    parallel_for(streams, [&](std::size_t i) {
      std::seed_seq seq{static_cast<std::uint32_t>(mc.seed & 0xffffffffu), static_cast<std::uint32_t>(mc.seed >> 32),
                        static_cast<std::uint32_t>(i)};
      std::mt19937_64 rng(seq);
      const std::uint64_t count = mc.samples / streams + (i < mc.samples % streams ? 1 : 0);
      for (std::uint64_t q = 0; q < count; ++q) parts[i].push(g(sample_poisson_exit(x, r, p, rng)));
    });
  } else {
    parts[0].count = mc.samples;
  }
  Moments all;
  for (const auto& m : parts) all.merge(m);
  out.boundary_mean = all.mean;
  const double var = all.count > 1 ? all.m2 / static_cast<double>(all.count - 1) : 0.0;
  out.stderr_ = std::sqrt(var / static_cast<double>(all.count));
  if (!spec.source.is_zero()) out.green = solve_standard(r, spec.source, fn::zero(p.n), p, cfg).u.estimate(x);
  out.estimate = out.boundary_mean + out.green.value;
  return out;
}

PolyFit brute_poly_fit(int n, const std::vector<Point>& points, const std::vector<double>& values, int degree) {
  require(values.size() == points.size(), ErrorCode::kInvalidArgument, "grid value arrays must match the grid");
  require(degree >= -1, ErrorCode::kInvalidArgument, "degree must be at least -1");
  PolyFit out;
  out.q = Polynomial(n);
  std::vector<double> resid = values;
  if (degree >= 0) {
    const auto basis = multi_indices_up_to(n, degree);
    const auto nb = static_cast<Eigen::Index>(basis.size());
    require(basis.size() <= points.size(), ErrorCode::kGridTooCoarse, "grid too small for the polynomial degree");
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(nb, nb);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nb);
    std::vector<double> phi(basis.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t j = 0; j < basis.size(); ++j) phi[j] = basis[j].power(points[i]);
      for (Eigen::Index a = 0; a < nb; ++a) {
        rhs(a) += phi[static_cast<std::size_t>(a)] * values[i];
        for (Eigen::Index b = 0; b < nb; ++b) G(a, b) += phi[static_cast<std::size_t>(a)] * phi[static_cast<std::size_t>(b)];
      }
    }
    Eigen::LDLT<Eigen::MatrixXd> ldlt(G);
    require(ldlt.info() == Eigen::Success && ldlt.isPositive(), ErrorCode::kGridTooCoarse,
            "normal equations are singular for this grid and degree");
    const Eigen::VectorXd coef = ldlt.solve(rhs);
    for (std::size_t j = 0; j < basis.size(); ++j) out.q.add(basis[j], coef(static_cast<Eigen::Index>(j)));
    for (std::size_t i = 0; i < points.size(); ++i) resid[i] -= out.q(points[i]);
  }
  for (double v : resid) out.residual = std::max(out.residual, std::abs(v));
  return out;
}

}  // namespace nlk
