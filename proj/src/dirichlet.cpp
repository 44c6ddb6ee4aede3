// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlk/dirichlet.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "nlk/error.hpp"
#include "nlk/grid.hpp"
#include "nlk/kernels.hpp"
#include "nlk/operator.hpp"
#include "nlk/parallel.hpp"

namespace nlk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class InterpolantField final : public Field {
 public:
  InterpolantField(FieldTraits t, ChebyshevInterpolant c, double radius)
      : Field(std::move(t)), c_(std::move(c)), radius_(radius) {}
  double value(const Point& y) const override { return norm(y) < radius_ ? c_(y) : 0.0; }
  Estimate estimate(const Point& y) const override { return {value(y), norm(y) < radius_ ? c_.error() : 0.0, true}; }

 private:
  ChebyshevInterpolant c_;
  double radius_;
};

// Solution of the standard problem on B_r. `datum` enters the Poisson
// integral; `outside` is returned for |y| >= r.
class DirichletField final : public Field {
 public:
  DirichletField(FieldTraits t, double r, FunctionHandle f, FunctionHandle datum, FunctionHandle outside,
                 FracParams p, QuadratureConfig cfg)
      : Field(std::move(t)),
        r_(r),
        f_(std::move(f)),
        datum_(std::move(datum)),
        outside_(std::move(outside)),
        p_(p),
        cfg_(cfg),
        scale_(p.normalized ? 1.0 : kernels::normalization_const(p.n, p.s)) {}

  double value(const Point& y) const override { return estimate(y).value; }

  Estimate estimate(const Point& x) const override {
    const double rx = norm(x);
    if (rx >= r_) return outside_.estimate(x);
    Estimate e = green_part(x);
    e += poisson_part(x);
    if (rx > 0.95 * r_) e.converged = false;
    return e;
  }

 private:
  Estimate green_part(const Point& x) const {
    if (f_.is_zero()) return {};
    const auto& ft = f_.traits();
    Region reg;
    reg.inner = ft.vanish_radius;
    reg.outer = std::min(r_, ft.support_radius);
    if (!(reg.outer > reg.inner)) return {};
    for (const auto& b : ft.breaks)
      if (b.radius < r_) reg.breaks.push_back(b);
    reg.breaks.push_back({r_, p_.s});
    const bool log_case = p_.n == 1 && std::abs(p_.s - 0.5) < 1e-12;
    reg.center_exponent = log_case ? -0.5 : 2.0 * p_.s - 1.0;
    const FracParams pn = p_;
    auto integrand = [&](const Point& y) {
      // Substituted nodes can round onto the boundary or the pole.
      if (distance(x, y) == 0.0 || norm2(y) >= r_ * r_) return Estimate{};
      const Estimate fy = f_.estimate(y);
      if (fy.value == 0.0 && fy.error == 0.0) return fy;
      const double g = kernels::green_ball(pn, r_, x, y);
      return Estimate{g * fy.value, g * fy.error, fy.converged};
    };
    Estimate e = integrate_about(p_.n, x, reg, integrand, cfg_);
    e *= scale_;
    return e;
  }

  Estimate poisson_part(const Point& x) const {
    const auto& dt = datum_.traits();
    Estimate e;
    if (!datum_.is_zero()) {
      Region reg;
      reg.inner = std::max(r_, dt.vanish_radius);
      reg.outer = dt.support_radius;
      if (reg.outer > reg.inner) {
        reg.breaks = dt.breaks;
        reg.breaks.push_back({r_, -p_.s});
        reg.decay = std::isfinite(dt.tail_exponent) ? 2.0 * p_.s - dt.tail_exponent : kInf;
        auto integrand = [&](const Point& y) {
          if (norm2(y) <= r_ * r_) return Estimate{};
          const Estimate gy = datum_.estimate(y);
          if (gy.value == 0.0 && gy.error == 0.0) return gy;
          const double k = kernels::poisson_kernel_ball(p_, r_, x, y);
          return Estimate{k * gy.value, k * gy.error, gy.converged};
        };
        e += integrate_about(p_.n, x, reg, integrand, cfg_);
      }
    }
    for (const auto& a : dt.atoms)
      if (norm(a.y) > r_) e.value += a.mass * kernels::poisson_kernel_ball(p_, r_, x, a.y);
    return e;
  }

  double r_;
  FunctionHandle f_;
  FunctionHandle datum_;
  FunctionHandle outside_;
  FracParams p_;
  QuadratureConfig cfg_;
  double scale_;
};

std::vector<Break> breaks_beyond(const FieldTraits& t, double r) {
  std::vector<Break> out;
  for (const auto& b : t.breaks)
    if (b.radius > r) out.push_back(b);
  return out;
}

std::vector<Atom> atoms_beyond(const FieldTraits& t, double r) {
  std::vector<Atom> out;
  for (const auto& a : t.atoms)
    if (norm(a.y) > r) out.push_back(a);
  return out;
}

FieldTraits solution_traits(int n, double r, double s, const FunctionHandle& outside, const QuadratureConfig& cfg) {
  FieldTraits t;
  t.dim = n;
  t.name = "dirichlet-solution";
  const auto& ot = outside.traits();
  t.tail_exponent = ot.tail_exponent;
  t.support_radius = std::max(r, ot.support_radius);
  if (outside.is_zero()) t.support_radius = r;
  t.vanish_radius = 0.0;
  t.breaks = breaks_beyond(ot, r);
  t.breaks.insert(t.breaks.begin(), Break{r, s});
  t.atoms = atoms_beyond(ot, r);
  t.derivative_order = kMaxJetOrder;
  t.exact_derivatives = false;
  t.noise = std::max(cfg.abs_tol, 0.1 * cfg.rel_tol);
  return t;
}

}  // namespace

FunctionHandle chebyshev_cached(const FunctionHandle& f, double r, int nodes) {
  ChebyshevInterpolant cheb = ChebyshevInterpolant::build(f.dim(), r, nodes, [&](const Point& x) {
    return f.estimate(x);
  });
  FieldTraits t = f.traits();
  t.name = f.traits().name + "|cached";
  t.support_radius = r;
  t.breaks = {{r}};
  t.atoms.clear();
  t.tail_exponent = -kInf;
  t.noise = cheb.error();
  return FunctionHandle(std::make_shared<InterpolantField>(t, std::move(cheb), r));
}

SolutionField solve_standard(double r, const FunctionHandle& f, const FunctionHandle& g, const FracParams& p,
                             const QuadratureConfig& cfg) {
  p.validate();
  cfg.validate();
  require(r > 0.0, ErrorCode::kInvalidArgument, "ball radius must be positive");
  require(f.dim() == p.n && g.dim() == p.n, ErrorCode::kInvalidArgument, "field dimension differs from params.n");
  const auto& gt = g.traits();
  if (std::isfinite(gt.tail_exponent) && !std::isfinite(gt.support_radius))
    require(gt.tail_exponent < 2.0 * p.s, ErrorCode::kTailDivergent,
            gt.name + ": exterior datum grows too fast for the standard problem; use solve_divergent");

  SolutionField sol;
  sol.radius = r;
  sol.u1 = fn::zero(p.n);
  sol.f_u1 = fn::zero(p.n);
  if (f.is_zero() && g.is_zero()) {
    sol.u = sol.u_tilde = fn::zero(p.n);
    return sol;
  }
  auto field = std::make_shared<DirichletField>(solution_traits(p.n, r, p.s, g, cfg), r, f, g, g, p, cfg);
  sol.u = sol.u_tilde = FunctionHandle(field);
  return sol;
}

FunctionHandle rhs_of_exterior_part(const FunctionHandle& u0, const FracParams& p, const QuadratureConfig& cfg,
                                    double r) {
  p.validate();
  require_in_Uk(u0, p);
  const FunctionHandle u1 = fn::restrict_radially(u0, 2.0 * r, kInf);
  if (u1.is_zero()) return fn::zero(p.n);
  const double c = p.normalized ? kernels::normalization_const(p.n, p.s) : 1.0;
  FieldTraits t;
  t.dim = p.n;
  t.name = "exterior-source";
  t.tail_exponent = 0.0;
  t.exact_derivatives = false;
  t.noise = std::max(cfg.abs_tol, cfg.rel_tol);
  return fn::from_callable(t, [=](const Point& x) {
    Estimate e = compensated_tail(u1, x, p, cfg, 2.0 * r);
    e *= c;
    return e;
  });
}

SolutionField solve_divergent(const DirichletSpec& spec, const FracParams& p, const QuadratureConfig& cfg) {
  p.validate();
  cfg.validate();
  const double r = spec.radius;
  require(r > 0.0, ErrorCode::kInvalidArgument, "ball radius must be positive");
  require(spec.source.valid() && spec.exterior.valid(), ErrorCode::kInvalidArgument, "spec needs source and exterior");
  require_in_Uk(spec.exterior, p);

  const FunctionHandle u0 = spec.exterior;
  const FunctionHandle u1 = fn::restrict_radially(u0, 2.0 * r, kInf);
  const FunctionHandle u2 = fn::restrict_radially(u0, r, 2.0 * r);

  SolutionField sol;
  sol.radius = r;
  sol.u1 = u1;
  sol.f_u1 = fn::zero(p.n);
  FunctionHandle source = spec.source;
  if (!u1.is_zero()) {
    const FunctionHandle direct = rhs_of_exterior_part(u0, p, cfg, r);
    sol.f_u1 = chebyshev_cached(direct, r, p.n == 3 ? 16 : 24);
    source = fn::difference(spec.source, sol.f_u1);
  }
  const SolutionField tilde = solve_standard(r, source, u2, p, cfg);
  sol.u_tilde = tilde.u;
  if (u1.is_zero()) {
    sol.u = tilde.u;
    return sol;
  }
  auto field = std::make_shared<DirichletField>(solution_traits(p.n, r, p.s, u0, cfg), r, source, u2, u0, p, cfg);
  sol.u = FunctionHandle(field);
  return sol;
}

SolutionField monomial_source_solution(const Polynomial& P, const FracParams& p, const QuadratureConfig& cfg) {
  require(P.degree() <= p.k - 1, ErrorCode::kInvalidArgument,
          "source polynomial degree " + std::to_string(P.degree()) + " exceeds k - 1 = " + std::to_string(p.k - 1));
  return solve_standard(1.0, fn::polynomial(P), fn::zero(p.n), p, cfg);
}

SolutionField add_kernel_element(const SolutionField& sol, const SolutionField& u_P) {
  SolutionField out = sol;
  out.u = fn::sum(sol.u, u_P.u);
  out.u_tilde = fn::sum(sol.u_tilde, u_P.u);
  return out;
}

MultiplicityBasis multiplicity_basis(const FracParams& p, const QuadratureConfig& cfg, int grid_size,
                                     double grid_radius) {
  p.validate();
  MultiplicityBasis mb;
  mb.monomials = p.k > 0 ? multi_indices_up_to(p.n, p.k - 1) : std::vector<MultiIndex>{};
  mb.grid = chebyshev_grid(p.n, grid_size > 0 ? grid_size : default_grid_size(p.n), grid_radius);
  const std::size_t m = mb.monomials.size();
  if (m == 0) return mb;
  for (const auto& a : mb.monomials) mb.fields.push_back(monomial_source_solution(Polynomial::monomial(a), p, cfg));

  const std::size_t g = mb.grid.size();
  std::vector<double> vals(m * g);
  parallel_for(m * g, [&](std::size_t idx) { vals[idx] = mb.fields[idx / g].u(mb.grid[idx % g]); });
  Eigen::MatrixXd gram(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      double acc = 0.0;
      for (std::size_t q = 0; q < g; ++q) acc += vals[i * g + q] * vals[j * g + q];
      gram(i, j) = acc / static_cast<double>(g);
    }
  mb.gram.assign(gram.data(), gram.data() + m * m);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(gram);
  const Eigen::VectorXd sv = svd.singularValues();
  mb.singular_values.assign(sv.data(), sv.data() + sv.size());
  const double cut = 1e-8 * sv(0);
  mb.rank = static_cast<int>((sv.array() > cut).count());
  return mb;
}

}  // namespace nlk
