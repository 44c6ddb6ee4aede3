// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlk/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "nlk/error.hpp"

namespace nlk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Cut {
  double rho;
  double exponent;
};

bool needs_substitution(double e) { return e != 0.0 && !(e > 0.0 && e == std::floor(e)); }

// The strongest singularity declared at this radius wins.
double break_exponent(const std::vector<Break>& breaks, double radius) {
  double e = 0.0;
  for (const auto& b : breaks)
    if (std::abs(b.radius - radius) <= 1e-14 * std::max(1.0, radius) && std::abs(b.exponent) > std::abs(e))
      e = b.exponent;
  return e;
}

std::vector<double> sphere_radii(const Region& r) {
  std::vector<double> out;
  if (r.inner > 0.0) out.push_back(r.inner);
  if (std::isfinite(r.outer)) out.push_back(r.outer);
  for (const auto& b : r.breaks)
    if (b.radius > 0.0) out.push_back(b.radius);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Integrand along one ray: rho -> f(x + rho w) rho^{n-1}.
class Ray {
 public:
  Ray(int n, const Point& x, const Point& w, const Integrand& f) : n_(n), x_(x), w_(w), f_(f) {}

  Estimate operator()(double rho) const {
    const Point y = x_ + rho * w_;
    Estimate e = f_(y);
    if (!std::isfinite(e.value)) fail(ErrorCode::kEvaluation, "non-finite integrand at " + to_string(y, n_));
    const double jac = n_ == 1 ? 1.0 : (n_ == 2 ? rho : rho * rho);
    e.value *= jac;
    e.error *= jac;
    return e;
  }

 private:
  int n_;
  Point x_;
  Point w_;
  const Integrand& f_;
};

Estimate finite_segment(const Ray& g, double a, double b, double ea, double eb, const quad::Tolerance& tol) {
  const bool sa = needs_substitution(ea);
  const bool sb = needs_substitution(eb);
  if (sa && sb) {
    const double mid = 0.5 * (a + b);
    quad::Tolerance half = tol;
    half.abs *= 0.5;
    return finite_segment(g, a, mid, ea, 0.0, half) + finite_segment(g, mid, b, 0.0, eb, half);
  }
  if (sa || sb) {
    const double beta = 1.0 / (1.0 + (sa ? ea : eb));
    const double len = b - a;
    auto h = [&](double u) {
      const double up = std::pow(u, beta);
      const double rho = sa ? a + len * up : b - len * up;
      return (len * beta * up / u) * g(rho);
    };
    return quad::integrate(h, 0.0, 1.0, tol);
  }
  return quad::integrate(g, a, b, tol);
}

Estimate tail_segment(const Ray& g, double L, double decay, const quad::Tolerance& tol) {
  const double q = 1.0 / std::min(decay, 8.0);
  auto h = [&](double u) {
    const double up = std::pow(u, -q);
    const double rho = L * up;
    const Estimate v = g(rho);
    if (v.value == 0.0 && v.error == 0.0) return v;
    return (L * q * up / u) * v;
  };
  return quad::integrate(h, 0.0, 1.0, tol);
}

// Radial integral along direction w, split at every sphere crossing.
Estimate radial(int n, const Point& x, const Point& w, const Region& region, const std::vector<double>& radii,
                const Integrand& f, const QuadratureConfig& cfg, const quad::Tolerance& tol) {
  std::vector<Cut> cuts;
  cuts.push_back({region.hole, region.hole == 0.0 ? region.center_exponent.value_or(0.0) : 0.0});
  const double p = dot(x, w);
  const double x2 = norm2(x);
  for (double c : radii) {
    const double disc = p * p - (x2 - c * c);
    if (disc < 0.0) continue;
    const double sq = std::sqrt(disc);
    const double qq = -(p + std::copysign(sq, p));
    double roots[2] = {qq, qq != 0.0 ? (x2 - c * c) / qq : 0.0};
    if (qq == 0.0) roots[1] = -p - sq;
    for (double r : roots)
      if (r > region.hole && r < region.reach) cuts.push_back({r, break_exponent(region.breaks, c)});
  }
  std::sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) { return a.rho < b.rho; });
  cuts.push_back({region.reach, 0.0});

  const Ray g(n, x, w, f);
  Estimate total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i].rho;
    const double b = cuts[i + 1].rho;
    if (!(b > a)) continue;
    const double mid = std::isfinite(b) ? 0.5 * (a + b) : a + 1.0;
    const double rm = norm(x + mid * w);
    if (rm < region.inner || rm >= region.outer) continue;
    if (std::isfinite(b)) {
      total += finite_segment(g, a, b, cuts[i].exponent, cuts[i + 1].exponent, tol);
      continue;
    }
    const double L = std::max(a, std::min(2.0 * a + 1.0, cfg.tail_cut));
    if (L > a) total += finite_segment(g, a, L, cuts[i].exponent, 0.0, tol);
    total += tail_segment(g, L, region.decay, tol);
  }
  return total;
}

// Angles (from the x direction) at which rays from x graze a sphere.
std::vector<double> tangent_angles(double rx, const std::vector<double>& radii) {
  std::vector<double> out;
  for (double c : radii)
    if (c < rx) out.push_back(kPi - std::asin(c / rx));
  return out;
}

void orthonormal_frame(int n, const Point& x, Point& e1, Point& e2, Point& e3) {
  const double rx = norm(x);
  e1 = rx > 0.0 ? (1.0 / rx) * x : Point{1.0, 0.0, 0.0};
  if (n == 2) {
    e2 = {-e1[1], e1[0], 0.0};
    e3 = {0.0, 0.0, 0.0};
    return;
  }
  const Point helper = std::abs(e1[0]) < 0.9 ? Point{1.0, 0.0, 0.0} : Point{0.0, 1.0, 0.0};
  e2 = helper - dot(helper, e1) * e1;
  e2 = (1.0 / norm(e2)) * e2;
  e3 = {e1[1] * e2[2] - e1[2] * e2[1], e1[2] * e2[0] - e1[0] * e2[2], e1[0] * e2[1] - e1[1] * e2[0]};
}

// Integrates h over [lo, hi] piecewise at the sorted interior split points.
template <class H>
Estimate piecewise(H&& h, double lo, double hi, std::vector<double> splits, const quad::Tolerance& tol) {
  splits.push_back(lo);
  splits.push_back(hi);
  std::sort(splits.begin(), splits.end());
  Estimate total;
  for (std::size_t i = 0; i + 1 < splits.size(); ++i) {
    const double a = std::max(lo, splits[i]);
    const double b = std::min(hi, splits[i + 1]);
    if (!(b > a)) continue;
    quad::Tolerance t = tol;
    t.abs *= (b - a) / (hi - lo);
    total += quad::integrate(h, a, b, t);
  }
  return total;
}

quad::Tolerance inner_tolerance(const quad::Tolerance& outer, double measure) {
  return {outer.rel * 0.1, outer.abs * 0.1 / measure, outer.max_subdivisions};
}

}  // namespace

void QuadratureConfig::validate() const {
  require(rel_tol > 0.0 && abs_tol > 0.0, ErrorCode::kInvalidArgument, "quadrature tolerances must be positive");
  require(max_subdivisions >= 1, ErrorCode::kInvalidArgument, "max_subdivisions must be positive");
  require(split_radius > 0.0 && split_radius < 1.0, ErrorCode::kInvalidArgument, "split_radius must lie in (0,1)");
  require(tail_cut > 3.0, ErrorCode::kInvalidArgument, "tail_cut must exceed 3");
}

QuadratureConfig QuadratureConfig::scaled(double factor) const {
  QuadratureConfig c = *this;
  c.rel_tol *= factor;
  c.abs_tol *= factor;
  return c;
}

double sphere_area(int n) {
  switch (n) {
    case 1: return 2.0;
    case 2: return 2.0 * kPi;
    case 3: return 4.0 * kPi;
    default: fail(ErrorCode::kInvalidArgument, "dimension must be 1, 2 or 3");
  }
}

Estimate integrate_about(int n, const Point& x, const Region& region, const Integrand& f,
                         const QuadratureConfig& cfg) {
  require(n >= 1 && n <= kMaxDim, ErrorCode::kInvalidArgument, "dimension must be 1, 2 or 3");
  if (!(region.outer > region.inner) || !(region.reach > region.hole)) return {};
  if (!std::isfinite(region.outer) && !std::isfinite(region.reach))
    require(region.decay > 0.0, ErrorCode::kPrecondition, "integrand tail is not integrable");
  if (region.center_exponent)
    require(*region.center_exponent > -1.0, ErrorCode::kPrecondition, "center singularity is not integrable");

  const std::vector<double> radii = sphere_radii(region);
  const quad::Tolerance tol = cfg.tolerance();
  const double rx = norm(x);

  if (n == 1) {
    const quad::Tolerance t = inner_tolerance(tol, 1.0);
    return radial(1, x, {1.0, 0.0, 0.0}, region, radii, f, cfg, t) +
           radial(1, x, {-1.0, 0.0, 0.0}, region, radii, f, cfg, t);
  }
  Point e1, e2, e3;
  orthonormal_frame(n, x, e1, e2, e3);
  const std::vector<double> graze = rx > 0.0 ? tangent_angles(rx, radii) : std::vector<double>{};

  if (n == 2) {
    const quad::Tolerance t = inner_tolerance(tol, 2.0 * kPi);
    auto h = [&](double theta) {
      const Point w = std::cos(theta) * e1 + std::sin(theta) * e2;
      return radial(2, x, w, region, radii, f, cfg, t);
    };
    std::vector<double> splits;
    for (double a : graze) {
      splits.push_back(a);
      splits.push_back(2.0 * kPi - a);
    }
    return piecewise(h, 0.0, 2.0 * kPi, splits, tol);
  }

  const quad::Tolerance t_phi = inner_tolerance(tol, 2.0);
  const quad::Tolerance t_rad = inner_tolerance(t_phi, 2.0 * kPi);
  auto hc = [&](double c) {
    const double sn = std::sqrt(std::max(0.0, 1.0 - c * c));
    auto hp = [&](double phi) {
      const Point w = c * e1 + (sn * std::cos(phi)) * e2 + (sn * std::sin(phi)) * e3;
      return radial(3, x, w, region, radii, f, cfg, t_rad);
    };
    return quad::integrate(hp, 0.0, 2.0 * kPi, t_phi);
  };
  std::vector<double> splits;
  for (double a : graze) splits.push_back(std::cos(a));
  return piecewise(hc, -1.0, 1.0, splits, tol);
}

Estimate integrate_ball(int n, const Integrand& f, const Point& center, double radius, const QuadratureConfig& cfg,
                        std::optional<double> center_exponent, std::vector<Break> breaks) {
  require(radius > 0.0, ErrorCode::kInvalidArgument, "ball radius must be positive");
  Region r;
  r.reach = radius;
  r.center_exponent = center_exponent;
  r.breaks = std::move(breaks);
  return integrate_about(n, center, r, f, cfg);
}

Estimate integrate_exterior(int n, const Integrand& f, double R, double decay, const QuadratureConfig& cfg,
                            std::vector<Break> breaks) {
  require(R >= 0.0, ErrorCode::kInvalidArgument, "exterior radius must be non-negative");
  require(decay > 0.0, ErrorCode::kPrecondition, "integrand tail is not integrable");
  Region r;
  r.inner = R;
  r.decay = decay;
  r.breaks = std::move(breaks);
  return integrate_about(n, Point{}, r, f, cfg);
}

Estimate pv_second_difference(const FunctionHandle& u, const Point& x, double s, double delta,
                              const QuadratureConfig& cfg) {
  const int n = u.dim();
  require(u.traits().derivative_order >= 2, ErrorCode::kPrecondition,
          u.traits().name + ": principal value needs second derivatives");
  require(delta > 0.0, ErrorCode::kInvalidArgument, "principal-value radius must be positive");
  if (u.is_zero()) return {};

  double hess[3][3] = {};
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      MultiIndex a = MultiIndex::unit(n, i) + MultiIndex::unit(n, j);
      hess[i][j] = hess[j][i] = u.derivative(a, x);
    }
  const double rho_h = std::min(hessian_switch_radius(u), delta);
  const double near_weight = std::pow(rho_h, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
  const Estimate u0 = u.estimate(x);
  // A finite-difference Hessian with step 1e-2 amplifies value errors by about 4 / h^2.
  const double h_err = u.traits().exact_derivatives ? 0.0 : 4.0 * std::max(u0.error, 1e-15) / 1e-4;

  const quad::Tolerance tol = cfg.tolerance();
  auto ray = [&](const Point& w, const quad::Tolerance& t) {
    double quad_form = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) quad_form += w[i] * hess[i][j] * w[j];
    Estimate out{quad_form * near_weight, h_err * near_weight, true};
    if (delta > rho_h) {
      // rho = exp(v) keeps the weight rho^{-2s} mild across decades of rho.
      auto g = [&](double v) {
        const double rho = std::exp(v);
        const Estimate a = u.estimate(x + rho * w);
        const Estimate b = u.estimate(x - rho * w);
        const double wt = std::pow(rho, -2.0 * s);
        const double d = a.value + b.value - 2.0 * u0.value;
        if (!std::isfinite(d)) fail(ErrorCode::kEvaluation, "non-finite second difference near " + to_string(x, n));
        return Estimate{d * wt, (a.error + b.error + 2.0 * u0.error) * wt, a.converged && b.converged};
      };
      out += quad::integrate(g, std::log(rho_h), std::log(delta), t);
    }
    return out;
  };

  Estimate total;
  if (n == 1) {
    total = ray({1.0, 0.0, 0.0}, tol);
  } else if (n == 2) {
    const quad::Tolerance t = inner_tolerance(tol, kPi);
    auto h = [&](double theta) { return ray({std::cos(theta), std::sin(theta), 0.0}, t); };
    total = quad::integrate(h, 0.0, kPi, tol);
  } else {
    const quad::Tolerance t_phi = inner_tolerance(tol, 1.0);
    const quad::Tolerance t_rad = inner_tolerance(t_phi, 2.0 * kPi);
    auto hc = [&](double c) {
      const double sn = std::sqrt(std::max(0.0, 1.0 - c * c));
      auto hp = [&](double phi) { return ray({sn * std::cos(phi), sn * std::sin(phi), c}, t_rad); };
      return quad::integrate(hp, 0.0, 2.0 * kPi, t_phi);
    };
    total = quad::integrate(hc, 0.0, 1.0, tol);
  }
  total *= -1.0;
  return total;
}

}  // namespace nlk
