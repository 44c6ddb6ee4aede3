// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlk/approx.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "nlk/error.hpp"
#include "nlk/grid.hpp"
#include "nlk/kernels.hpp"
#include "nlk/operator.hpp"
#include "nlk/parallel.hpp"

namespace nlk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double van_der_corput(std::size_t i, unsigned base) {
  double q = 0.0;
  double bk = 1.0 / base;
  while (i > 0) {
    q += static_cast<double>(i % base) * bk;
    i /= base;
    bk /= base;
  }
  return q;
}

double grid_sup(const std::vector<Point>& grid, const FunctionHandle& f) {
  std::vector<double> v(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { v[i] = std::abs(f(grid[i])); });
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

// max over the grid and |alpha| <= m of |d^alpha (a - b)|.
double cm_distance(const FunctionHandle& a, const FunctionHandle& b, const std::vector<Point>& grid, int m) {
  const auto orders = multi_indices_up_to(a.dim(), m);
  std::vector<double> v(grid.size(), 0.0);
  parallel_for(grid.size(), [&](std::size_t i) {
    for (const auto& alpha : orders)
      v[i] = std::max(v[i], std::abs(a.derivative(alpha, grid[i]) - b.derivative(alpha, grid[i])));
  });
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

int fit_grid_size(int n, const ShadowConfig& sc) {
  if (sc.grid_size > 0) return sc.grid_size;
  int largest = sc.poles;
  for (int c : sc.pole_study) largest = std::max(largest, c);
  int g = default_grid_size(n);
  while (std::pow(g, n) < 2.0 * largest + 1.0) g += 2;
  return g;
}

}  // namespace

FunctionHandle Dictionary::entry(std::size_t j) const { return fn::poisson_entry(n, s, 1.0, poles.at(j)); }

Dictionary make_dictionary(int n, double s, int poles, double rho, double min_gap) {
  require(n >= 1 && n <= kMaxDim, ErrorCode::kInvalidArgument, "dimension must be 1, 2 or 3");
  require(poles >= 1, ErrorCode::kInvalidArgument, "dictionary needs at least one pole");
  require(rho > 1.0 + min_gap && min_gap > 0.0, ErrorCode::kInvalidArgument, "need 0 < min_gap < rho - 1");
  Dictionary d;
  d.n = n;
  d.s = s;
  d.rho = rho;
  const double lo = min_gap;
  const double hi = 0.9 * (rho - 1.0);
  auto radius = [&](double t) { return 1.0 + lo * std::pow(hi / lo, t); };
  if (n == 1) {
    require(poles % 2 == 0, ErrorCode::kInvalidArgument, "one-dimensional dictionaries need an even pole count");
    const int half = poles / 2;
    for (int i = 1; i <= half; ++i) {
      const double r = radius(static_cast<double>(i) / half);
      d.poles.push_back({r, 0.0, 0.0});
      d.poles.push_back({-r, 0.0, 0.0});
    }
    return d;
  }
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int j = 0; j < poles; ++j) {
    const double r = radius(van_der_corput(static_cast<std::size_t>(j) + 1, 2));
    const double phi = 2.0 * kPi * std::fmod(golden * j, 1.0);
    if (n == 2) {
      d.poles.push_back({r * std::cos(phi), r * std::sin(phi), 0.0});
    } else {
      const double z = 1.0 - 2.0 * van_der_corput(static_cast<std::size_t>(j) + 1, 3);
      const double q = std::sqrt(std::max(0.0, 1.0 - z * z));
      d.poles.push_back({r * q * std::cos(phi), r * q * std::sin(phi), r * z});
    }
  }
  return d;
}

FitTarget sample_target(const FunctionHandle& u, const std::vector<Point>& grid, int m) {
  require(m >= 0, ErrorCode::kInvalidArgument, "derivative order must be non-negative");
  require(u.traits().derivative_order >= m, ErrorCode::kPrecondition,
          u.traits().name + ": derivatives of order " + std::to_string(m) + " are not available");
  FitTarget t;
  t.n = u.dim();
  t.m = m;
  t.grid = grid;
  t.orders = multi_indices_up_to(t.n, m);
  const std::size_t na = t.orders.size();
  t.values.assign(grid.size() * na, 0.0);
  parallel_for(grid.size(), [&](std::size_t i) {
    for (std::size_t a = 0; a < na; ++a) t.values[i * na + a] = u.derivative(t.orders[a], grid[i]);
  });
  return t;
}

FitResult fit_sharmonic(const FitTarget& target, const Dictionary& dict, double ridge, int max_poles) {
  require(ridge >= 0.0, ErrorCode::kInvalidArgument, "ridge parameter must be non-negative");
  require(static_cast<int>(dict.size()) <= max_poles, ErrorCode::kPrecondition,
          "dictionary has " + std::to_string(dict.size()) + " poles, above the cap " + std::to_string(max_poles));
  require(target.n == dict.n, ErrorCode::kInvalidArgument, "target and dictionary dimensions differ");
  require(!dict.poles.empty(), ErrorCode::kInvalidArgument, "empty dictionary");
  const std::size_t na = target.orders.size();
  const auto rows = static_cast<Eigen::Index>(target.grid.size() * na);
  const auto cols = static_cast<Eigen::Index>(dict.size());
  require(target.values.size() == static_cast<std::size_t>(rows), ErrorCode::kInvalidArgument,
          "target values do not match grid and orders");

  Eigen::MatrixXd A(rows, cols);
  parallel_for(dict.size(), [&](std::size_t j) {
    const FunctionHandle e = dict.entry(j);
    for (std::size_t i = 0; i < target.grid.size(); ++i)
      for (std::size_t a = 0; a < na; ++a)
        A(static_cast<Eigen::Index>(i * na + a), static_cast<Eigen::Index>(j)) =
            e.derivative(target.orders[a], target.grid[i]);
  });
  const Eigen::Map<const Eigen::VectorXd> b(target.values.data(), rows);

  Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd sv = svd.singularValues();
  FitResult out;
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const double cut = smax * std::numeric_limits<double>::epsilon() * static_cast<double>(std::max(rows, cols));
  out.rank = static_cast<int>((sv.array() > cut).count());
  out.condition = out.rank > 0 ? smax / sv(out.rank - 1) : kInf;
  if (ridge == 0.0)
    require(out.rank == std::min(rows, cols) && cols <= rows, ErrorCode::kIllConditioned,
            "dictionary system is rank deficient (rank " + std::to_string(out.rank) + " of " +
                std::to_string(cols) + "); use a positive ridge parameter");
  Eigen::VectorXd filt(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    const double si = sv(i);
    filt(i) = ridge == 0.0 ? 1.0 / si : si / (si * si + ridge);
  }
  const Eigen::VectorXd w = svd.matrixV() * filt.asDiagonal() * (svd.matrixU().transpose() * b);
  out.weights.assign(w.data(), w.data() + w.size());
  out.fit_error = (A * w - b).cwiseAbs().maxCoeff();
  return out;
}

FunctionHandle dictionary_field(const Dictionary& dict, std::span<const double> weights) {
  require(weights.size() == dict.size(), ErrorCode::kInvalidArgument, "one weight per dictionary entry required");
  std::vector<std::pair<double, FunctionHandle>> terms;
  for (std::size_t j = 0; j < weights.size(); ++j)
    if (weights[j] != 0.0) terms.emplace_back(weights[j], dict.entry(j));
  if (terms.empty()) return fn::zero(dict.n);
  return fn::linear_combination(std::move(terms));
}

void ShadowConfig::validate() const {
  require(poles >= 1 && poles <= max_poles, ErrorCode::kInvalidArgument, "pole count must lie in [1, max_poles]");
  require(rho > 1.0, ErrorCode::kInvalidArgument, "dictionary radius must exceed 1");
  require(ridge >= 0.0, ErrorCode::kInvalidArgument, "ridge must be non-negative");
  require(safety >= 1.0, ErrorCode::kInvalidArgument, "safety factor must be at least 1");
  require(rbar_start >= 2.0 && rbar_max >= rbar_start, ErrorCode::kInvalidArgument,
          "truncation radii need 2 <= rbar_start <= rbar_max");
  for (int c : pole_study)
    require(c >= 1 && c <= max_poles, ErrorCode::kInvalidArgument, "pole study counts must lie in [1, max_poles]");
}

Corrector build_corrector(const FunctionHandle& u, double Rbar, const FracParams& p, const QuadratureConfig& cfg) {
  require(Rbar >= 2.0 * std::sqrt(static_cast<double>(p.n)) + 1.0, ErrorCode::kInvalidArgument,
          "truncation radius too small for the B_2 corrector");
  Corrector c;
  c.Rbar = Rbar;
  c.u_tilde = fn::restrict_radially(u, Rbar, kInf);
  if (c.u_tilde.is_zero()) {
    c.f_eps = fn::zero(p.n);
    c.w = solve_standard(2.0, c.f_eps, c.f_eps, p, cfg);
    return c;
  }
  const double scale = p.normalized ? kernels::normalization_const(p.n, p.s) : 1.0;
  FieldTraits t;
  t.dim = p.n;
  t.name = "truncation-source";
  t.exact_derivatives = false;
  const FunctionHandle ut = c.u_tilde;
  const FunctionHandle direct = fn::from_callable(t, [=](const Point& x) {
    Estimate e = compensated_tail(ut, x, p, cfg, Rbar);
    e *= scale;
    return e;
  });
  c.f_eps = chebyshev_cached(direct, 2.0, p.n == 3 ? 16 : 24);
  c.w = solve_standard(2.0, c.f_eps, fn::zero(p.n), p, cfg);
  c.f_sup = grid_sup(chebyshev_grid(p.n, default_grid_size(p.n), 2.0), c.f_eps);
  c.w_sup = grid_sup(chebyshev_grid(p.n, default_grid_size(p.n), 1.0), c.w.u);
  return c;
}

ApproxReport shadow_harmonic(const FunctionHandle& u, int m, double epsilon, const FracParams& p,
                             const QuadratureConfig& cfg, const ShadowConfig& sc) {
  p.validate();
  cfg.validate();
  sc.validate();
  require(epsilon > 0.0, ErrorCode::kInvalidArgument, "epsilon must be positive");
  require(u.dim() == p.n, ErrorCode::kInvalidArgument, "field dimension differs from params.n");
  require_in_Uk(u, p);
  require(m >= 0 && u.traits().derivative_order >= m, ErrorCode::kPrecondition,
          u.traits().name + ": derivatives of order " + std::to_string(m) + " are not available");

  ApproxReport rep;
  rep.epsilon = epsilon;
  rep.m = m;
  rep.rho = sc.rho;
  rep.u = u;
  rep.psi_bound = kernels::psi_bound(p) * (p.normalized ? kernels::normalization_const(p.n, p.s) : 1.0);

  const double target_tail = epsilon / (rep.psi_bound * sc.safety);
  double R = sc.rbar_start;
  double tail = tail_integral(u, R, p, cfg).value;
  while (tail > target_tail) {
    require(2.0 * R <= sc.rbar_max, ErrorCode::kPrecondition,
            "no truncation radius up to " + std::to_string(sc.rbar_max) + " makes the tail small enough");
    R *= 2.0;
    tail = tail_integral(u, R, p, cfg).value;
  }
  rep.Rbar = R;
  rep.tail_at_Rbar = tail;
  rep.R_eps = sc.rho + R;
  rep.corrector = build_corrector(u, R, p, cfg);
  const FunctionHandle& w = rep.corrector.w.u;

  rep.grid = chebyshev_grid(p.n, fit_grid_size(p.n, sc), 1.0);
  const FunctionHandle target = w.is_zero() ? u : fn::sum(u, w);
  const FitTarget samples = sample_target(target, rep.grid, m);

  std::vector<int> counts = sc.pole_study;
  counts.push_back(sc.poles);
  std::sort(counts.begin(), counts.end());
  counts.erase(std::unique(counts.begin(), counts.end()), counts.end());
  Dictionary main_dict;
  for (int count : counts) {
    const Dictionary d = make_dictionary(p.n, p.s, count, sc.rho, sc.min_gap);
    FitResult fr = fit_sharmonic(samples, d, sc.ridge, sc.max_poles);
    rep.pole_study.push_back({count, fr.fit_error});
    if (count == sc.poles) {
      main_dict = d;
      rep.fit = std::move(fr);
    }
  }
  rep.poles = main_dict.poles;
  rep.weights = rep.fit.weights;
  rep.v = dictionary_field(main_dict, rep.weights);
  rep.u_eps = fn::linear_combination({{1.0, rep.v}, {1.0, rep.corrector.u_tilde}, {-1.0, w}});
  rep.achieved_cm_error = cm_distance(rep.u_eps, u, rep.grid, m);
  rep.achieved = rep.achieved_cm_error <= epsilon;

  if (sc.compute_harmonicity) {
    const int hg = sc.harmonicity_grid > 0 ? sc.harmonicity_grid : default_grid_size(p.n);
    const std::vector<Point> hgrid = chebyshev_grid(p.n, hg, 0.5);
    const FunctionHandle ue = rep.u_eps;
    const std::vector<Estimate> vals =
        evaluate_grid(hgrid, [&](const Point& x) { return divergent_flap(ue, x, p, cfg); });
    std::vector<double> f(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
      f[i] = vals[i].value;
      rep.harmonicity_error = std::max(rep.harmonicity_error, vals[i].error);
      rep.harmonicity_converged = rep.harmonicity_converged && vals[i].converged;
    }
    const std::vector<double> zeros(f.size(), 0.0);
    rep.harmonicity_residual = mod_poly_distance(p.n, hgrid, f, zeros, admissible_degree(p)).residual;
  }
  return rep;
}

int derivative_pack_size(int n, int m) {
  int total = n;
  int pw = 1;
  for (int j = 0; j <= m; ++j) {
    total += pw;
    pw *= n;
  }
  return total;
}

std::vector<double> derivative_pack(const FunctionHandle& u, const Point& x, int m) {
  const int n = u.dim();
  require(m >= 0 && u.traits().derivative_order >= m, ErrorCode::kPrecondition,
          u.traits().name + ": derivatives of order " + std::to_string(m) + " are not available");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(derivative_pack_size(n, m)));
  for (int i = 0; i < n; ++i) out.push_back(x[static_cast<std::size_t>(i)]);
  out.push_back(u(x));
  for (int j = 1; j <= m; ++j) {
    // Index tuples (i_1, ..., i_j) in lexicographic order, counted into a multi-index.
    std::vector<int> idx(static_cast<std::size_t>(j), 0);
    while (true) {
      MultiIndex alpha = MultiIndex::zero(n);
      for (int i : idx) alpha.c[static_cast<std::size_t>(i)] += 1;
      out.push_back(u.derivative(alpha, x));
      int pos = j - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - 1) idx[static_cast<std::size_t>(pos--)] = 0;
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
    }
  }
  return out;
}

namespace nonlinearity {

Nonlinearity zero() {
  Nonlinearity F;
  F.name = "zero";
  F.eval = [](std::span<const double>) { return 0.0; };
  F.lipschitz = 0.0;
  F.identically_zero = true;
  return F;
}

Nonlinearity constant(double c) {
  Nonlinearity F;
  F.name = "constant";
  F.eval = [c](std::span<const double>) { return c; };
  F.lipschitz = 0.0;
  F.identically_zero = c == 0.0;
  return F;
}

Nonlinearity sin_composite(double amplitude, std::vector<double> coefs) {
  Nonlinearity F;
  F.name = "sin-composite";
  double cmax = 0.0;
  for (double c : coefs) cmax = std::max(cmax, std::abs(c));
  F.eval = [amplitude, coefs = std::move(coefs)](std::span<const double> z) {
    require(z.size() >= coefs.size(), ErrorCode::kInvalidArgument, "derivative pack shorter than coefficients");
    double arg = 0.0;
    for (std::size_t i = 0; i < coefs.size(); ++i) arg += coefs[i] * z[i];
    return amplitude * std::sin(arg);
  };
  F.lipschitz = std::abs(amplitude) * cmax;
  F.identically_zero = amplitude == 0.0 || cmax == 0.0;
  return F;
}

}  // namespace nonlinearity

double estimate_lipschitz(const Nonlinearity& F, int size, double S, std::uint64_t seed, int samples) {
  require(size >= 1 && S > 0.0 && samples >= 1, ErrorCode::kInvalidArgument, "invalid Lipschitz sampling box");
  if (F.identically_zero) return 0.0;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-S, S);
  const double h = 1e-6 * std::max(1.0, S);
  std::vector<double> z(static_cast<std::size_t>(size));
  double L = 0.0;
  for (int q = 0; q < samples; ++q) {
    for (double& zi : z) zi = unif(rng);
    for (std::size_t i = 0; i < z.size(); ++i) {
      const double z0 = z[i];
      z[i] = z0 + h;
      const double fp = F.eval(z);
      z[i] = z0 - h;
      const double fm = F.eval(z);
      z[i] = z0;
      L = std::max(L, std::abs(fp - fm) / (2.0 * h));
    }
  }
  return L;
}

NonlinearReport nonlinear_shadow(const FunctionHandle& u, const Nonlinearity& F, int m, double epsilon,
                                 const FracParams& p, const QuadratureConfig& cfg, const ShadowConfig& sc, double h) {
  p.validate();
  require(h > 0.0 && h < 1.0, ErrorCode::kInvalidArgument, "extension width h must lie in (0, 1)");
  require(static_cast<bool>(F.eval), ErrorCode::kInvalidArgument, "nonlinearity has no evaluator");
  require(m >= 0 && u.traits().derivative_order >= m, ErrorCode::kPrecondition,
          u.traits().name + ": derivatives of order " + std::to_string(m) + " are not available");
  require_in_Uk(u, p);

  NonlinearReport rep;
  rep.h = h;
  const double r = 1.0 + h;
  FunctionHandle f = fn::zero(p.n);
  if (!F.identically_zero) {
    FieldTraits t;
    t.dim = p.n;
    t.name = "nonlinear-source";
    t.breaks = u.traits().breaks;
    t.exact_derivatives = false;
    t.derivative_order = 0;
    const Nonlinearity Fc = F;
    const FunctionHandle uc = u;
    f = fn::from_callable(t, [Fc, uc, m](const Point& x) {
      return Estimate{Fc.eval(derivative_pack(uc, x, m)), 0.0, true};
    });
  }
  rep.v = solve_divergent({r, f, fn::zero(p.n)}, p, cfg);
  const bool v_zero = rep.v.u.is_zero();
  const FunctionHandle w = v_zero ? u : fn::difference(u, rep.v.u);
  rep.shadow = shadow_harmonic(w, m, epsilon, p, cfg, sc);
  rep.u_eps = v_zero ? rep.shadow.u_eps : fn::sum(rep.v.u, rep.shadow.u_eps);
  rep.grid = rep.shadow.grid;

  const std::size_t g = rep.grid.size();
  const auto orders = multi_indices_up_to(p.n, m);
  rep.eta.assign(g, 0.0);
  std::vector<double> order_sup(static_cast<std::size_t>(m) + 1, 0.0);
  std::vector<std::vector<double>> local(g, std::vector<double>(order_sup.size(), 0.0));
  parallel_for(g, [&](std::size_t i) {
    const Point& x = rep.grid[i];
    if (!F.identically_zero)
      rep.eta[i] = F.eval(derivative_pack(u, x, m)) - F.eval(derivative_pack(rep.u_eps, x, m));
    for (const auto& a : orders)
      local[i][static_cast<std::size_t>(a.order())] =
          std::max(local[i][static_cast<std::size_t>(a.order())], std::abs(u.derivative(a, x)));
  });
  for (std::size_t i = 0; i < g; ++i) {
    rep.eta_sup = std::max(rep.eta_sup, std::abs(rep.eta[i]));
    for (std::size_t j = 0; j < order_sup.size(); ++j) order_sup[j] = std::max(order_sup[j], local[i][j]);
  }
  rep.S = 2.0 + std::accumulate(order_sup.begin(), order_sup.end(), 0.0);

  const int N = derivative_pack_size(p.n, m);
  rep.derivative_terms = N - p.n;
  rep.lipschitz_declared = F.lipschitz.has_value();
  rep.lipschitz = rep.lipschitz_declared ? *F.lipschitz : estimate_lipschitz(F, N, rep.S);
  const double achieved = cm_distance(rep.u_eps, u, rep.grid, m);
  rep.bound = rep.lipschitz * rep.derivative_terms * achieved;
  rep.bound_holds = rep.eta_sup <= rep.bound * (1.0 + 1e-12) + 1e-15;
  return rep;
}

}  // namespace nlk
