// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlk/operator.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "nlk/error.hpp"
#include "nlk/kernels.hpp"
#include "nlk/parallel.hpp"

namespace nlk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double decay_excess(double margin, double tail_exponent) {
  return std::isfinite(tail_exponent) ? margin - tail_exponent : kInf;
}

FracParams unnormalized(FracParams p) {
  p.normalized = false;
  return p;
}

// PV int_{B_cut} (u(x) - u(y)) K dy + u(x) int_{B_cut^c} K dy, unnormalized.
// With cut = infinity this is the classical operator.
Estimate local_part(const FunctionHandle& u, const Point& x, const FracParams& p, const QuadratureConfig& cfg,
                    double cut) {
  const auto& t = u.traits();
  const double pe = p.kernel_exponent();
  const double rx = norm(x);
  double dist = kInf;
  for (const auto& b : t.breaks) dist = std::min(dist, std::abs(rx - b.radius));
  if (std::isfinite(cut)) dist = std::min(dist, std::abs(rx - cut));
  const double delta = std::min(cfg.split_radius, 0.5 * dist);
  require(delta > 1e-8, ErrorCode::kPrecondition,
          t.name + ": evaluation point lies on a sphere where the function is not smooth");
  const bool zero_near = rx + delta <= t.vanish_radius || rx - delta >= t.support_radius;

  Estimate out;
  if (!zero_near) {
    out += pv_second_difference(u, x, p.s, delta, cfg);
    out += (sphere_area(p.n) * std::pow(delta, -2.0 * p.s) / (2.0 * p.s)) * u.estimate(x);
  }

  Region far;
  far.inner = t.vanish_radius;
  far.outer = std::min(t.support_radius, cut);
  far.hole = delta;
  far.breaks = t.breaks;
  if (std::isfinite(cut)) far.breaks.push_back({cut});
  if (!std::isfinite(far.outer)) {
    far.decay = decay_excess(2.0 * p.s, t.tail_exponent);
    require(far.decay > 0.0, ErrorCode::kTailDivergent,
            t.name + ": tail grows too fast for the classical operator; use the divergent operator");
  }
  auto integrand = [&](const Point& y) {
    const Estimate e = u.estimate(y);
    if (e.value == 0.0 && e.error == 0.0) return e;
    const double k = std::pow(distance(x, y), -pe);
    return Estimate{e.value * k, e.error * k, e.converged};
  };
  out -= integrate_about(p.n, x, far, integrand, cfg);

  for (const auto& a : t.atoms)
    if (norm(a.y) < cut) out.value -= a.mass * std::pow(distance(x, a.y), -pe);
  return out;
}

Estimate apply_normalization(Estimate e, const FracParams& p) {
  if (p.normalized) e *= kernels::normalization_const(p.n, p.s);
  return e;
}

}  // namespace

int admissible_degree(const FracParams& p) { return p.s <= 0.5 ? p.k : p.k + 1; }

void require_in_Uk(const FunctionHandle& u, const FracParams& p) {
  const double g = u.traits().tail_exponent;
  if (std::isfinite(u.traits().support_radius) || !std::isfinite(g)) return;
  require(g < 2.0 * p.s + p.k, ErrorCode::kNotInUk,
          u.traits().name + " violates the tail growth condition: int_{|y|>1} |u(y)| |y|^(-n-2s-k) dy diverges (growth exponent " +
              std::to_string(g) + " is not below 2s + k = " + std::to_string(2.0 * p.s + p.k) + ")");
}

Estimate classical_flap(const FunctionHandle& u, const Point& x, const FracParams& p, const QuadratureConfig& cfg) {
  p.validate();
  require(u.dim() == p.n, ErrorCode::kInvalidArgument, "field dimension differs from params.n");
  if (u.is_zero()) return {};
  return apply_normalization(local_part(u, x, p, cfg, kInf), p);
}

Estimate divergent_flap(const FunctionHandle& u, const Point& x, const FracParams& p, const QuadratureConfig& cfg) {
  p.validate();
  require(u.dim() == p.n, ErrorCode::kInvalidArgument, "field dimension differs from params.n");
  require(norm(x) < 1.0, ErrorCode::kDomain, "divergent operator is evaluated inside B_1 only");
  require_in_Uk(u, p);
  if (u.is_zero()) return {};
  Estimate e = local_part(u, x, p, cfg, 2.0);
  e += compensated_tail(u, x, p, cfg, 2.0);
  return apply_normalization(e, p);
}

Estimate compensated_tail(const FunctionHandle& u, const Point& x, const FracParams& p, const QuadratureConfig& cfg,
                          double inner) {
  require(norm(x) < inner, ErrorCode::kDomain, "compensated tail needs |x| below the inner radius");
  require_in_Uk(u, p);
  const auto& t = u.traits();
  const FracParams raw = unnormalized(p);
  Estimate out;
  Region r;
  r.inner = std::max(inner, t.vanish_radius);
  r.outer = t.support_radius;
  r.breaks = t.breaks;
  r.decay = decay_excess(2.0 * p.s + p.k, t.tail_exponent);
  if (!u.is_zero() && r.outer > r.inner) {
    auto integrand = [&](const Point& y) {
      const Estimate e = u.estimate(y);
      if (e.value == 0.0 && e.error == 0.0) return e;
      const double rem = kernels::taylor_remainder(raw, x, y);
      return Estimate{-e.value * rem, e.error * std::abs(rem), e.converged};
    };
    out += integrate_about(p.n, Point{}, r, integrand, cfg);
  }
  for (const auto& a : t.atoms)
    if (norm(a.y) >= inner) out.value -= a.mass * kernels::taylor_remainder(raw, x, a.y);
  return out;
}

Estimate tail_integral(const FunctionHandle& u, double R, const FracParams& p, const QuadratureConfig& cfg) {
  require(R > 0.0, ErrorCode::kInvalidArgument, "tail radius must be positive");
  require_in_Uk(u, p);
  const auto& t = u.traits();
  const double pw = -(p.kernel_exponent() + p.k);
  Estimate out;
  Region r;
  r.inner = std::max(R, t.vanish_radius);
  r.outer = t.support_radius;
  r.breaks = t.breaks;
  r.decay = decay_excess(2.0 * p.s + p.k, t.tail_exponent);
  if (!u.is_zero() && r.outer > r.inner) {
    auto integrand = [&](const Point& y) {
      const Estimate e = u.estimate(y);
      const double w = std::pow(norm(y), pw);
      return Estimate{std::abs(e.value) * w, e.error * w, e.converged};
    };
    out += integrate_about(p.n, Point{}, r, integrand, cfg);
  }
  for (const auto& a : t.atoms)
    if (norm(a.y) > R) out.value += std::abs(a.mass) * std::pow(norm(a.y), pw);
  return out;
}

TruncationReport truncated_flap(const FunctionHandle& u, const std::vector<Point>& points, double R,
                                const FracParams& p, const QuadratureConfig& cfg) {
  p.validate();
  require(R > 3.0, ErrorCode::kInvalidArgument, "truncation radius must exceed 3");
  require_in_Uk(u, p);
  const auto& t = u.traits();
  const FunctionHandle uR = fn::restrict_radially(u, 0.0, R);
  const double c = p.normalized ? kernels::normalization_const(p.n, p.s) : 1.0;

  TruncationReport rep;
  rep.R = R;
  rep.points = points;
  rep.P_R = Polynomial(p.n);
  Region shell;
  shell.inner = std::max(2.0, t.vanish_radius);
  shell.outer = std::min(R, t.support_radius);
  shell.breaks = t.breaks;
  for (const auto& alpha : multi_indices_up_to(p.n, p.k - 1)) {
    Estimate m;
    if (!u.is_zero() && shell.outer > shell.inner) {
      auto integrand = [&](const Point& y) {
        const Estimate e = u.estimate(y);
        const double d = kernels::kernel_x_derivative(p, alpha, y);
        return Estimate{e.value * d, e.error * std::abs(d), e.converged};
      };
      m = integrate_about(p.n, Point{}, shell, integrand, cfg);
    }
    for (const auto& a : t.atoms) {
      const double ra = norm(a.y);
      if (ra > 2.0 && ra < R) m.value += a.mass * kernels::kernel_x_derivative(p, alpha, a.y);
    }
    rep.P_R.add(alpha, -c * m.value / alpha.factorial());
  }

  const FracParams pu = unnormalized(p);
  const std::vector<Estimate> cl =
      evaluate_grid(points, [&](const Point& x) { return local_part(uR, x, pu, cfg, kInf); });
  const std::vector<Estimate> lim = evaluate_grid(points, [&](const Point& x) { return divergent_flap(u, x, p, cfg); });
  rep.f_R.resize(points.size());
  rep.f_R_error.resize(points.size());
  rep.limit.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    rep.f_R[i] = c * cl[i].value - rep.P_R(points[i]);
    rep.f_R_error[i] = c * cl[i].error;
    rep.limit[i] = lim[i].value;
    rep.residual_to_limit = std::max(rep.residual_to_limit, std::abs(rep.f_R[i] - rep.limit[i]));
  }
  return rep;
}

PolyFit mod_poly_distance(int n, const std::vector<Point>& points, const std::vector<double>& f,
                          const std::vector<double>& g, int degree) {
  require(f.size() == points.size() && g.size() == points.size(), ErrorCode::kInvalidArgument,
          "grid value arrays must match the grid");
  require(degree >= -1, ErrorCode::kInvalidArgument, "degree must be at least -1");
  PolyFit out;
  out.q = Polynomial(n);
  const std::size_t m = points.size();
  Eigen::VectorXd b(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) b(i) = f[i] - g[i];
  if (degree >= 0) {
    const auto basis = multi_indices_up_to(n, degree);
    require(basis.size() <= m, ErrorCode::kGridTooCoarse,
            "grid has " + std::to_string(m) + " points but degree " + std::to_string(degree) + " needs " +
                std::to_string(basis.size()));
    Eigen::MatrixXd A(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) A(i, j) = basis[j].power(points[i]);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    require(qr.rank() == static_cast<Eigen::Index>(basis.size()), ErrorCode::kGridTooCoarse,
            "grid does not determine polynomials of degree " + std::to_string(degree));
    const Eigen::VectorXd coef = qr.solve(b);
    for (std::size_t j = 0; j < basis.size(); ++j) out.q.add(basis[j], coef(j));
    b -= A * coef;
  }
  out.residual = m ? b.cwiseAbs().maxCoeff() : 0.0;
  return out;
}

std::vector<Estimate> evaluate_grid(const std::vector<Point>& points,
                                    const std::function<Estimate(const Point&)>& op) {
  std::vector<Estimate> out(points.size());
  parallel_for(points.size(), [&](std::size_t i) { out[i] = op(points[i]); });
  return out;
}

}  // namespace nlk
