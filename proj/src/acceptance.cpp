// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlk/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "nlk/approx.hpp"
#include "nlk/dirichlet.hpp"
#include "nlk/error.hpp"
#include "nlk/grid.hpp"
#include "nlk/kernels.hpp"
#include "nlk/operator.hpp"
#include "nlk/oracle.hpp"
#include "nlk/parallel.hpp"

namespace nlk {

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string sci(double v) { return fmt("%.3e", v); }

Point e1(double t) { return {t, 0.0, 0.0}; }

// 1. Normalized operator of the Getoor profile is constant in B_1.
Outcome getoor_identity() {
  const FracParams p{1, 0.5, 0, true};
  const QuadratureConfig cfg;
  const FunctionHandle u = fn::getoor_profile(1, 0.5);
  double worst = 0.0;
  for (double x : {0.0, 0.3, -0.3, 0.6, -0.6}) worst = std::max(worst, std::abs(classical_flap(u, e1(x), p, cfg).value - 1.0));
  return {worst <= 1e-4, "max |flap - 1| = " + sci(worst) + " (tol 1e-4)"};
}

// 2. Unit mass of the Poisson kernel.
Outcome poisson_mass() {
  const QuadratureConfig cfg;
  double worst = 0.0;
  for (int n : {1, 2}) {
    const FracParams p{n, 0.5, 0, false};
    for (double x0 : {0.0, 0.5, 0.9}) {
      const Point x = e1(x0);
      Region reg;
      reg.inner = 1.0;
      reg.breaks = {{1.0, -p.s}};
      reg.decay = 2.0 * p.s;
      const Estimate m = integrate_about(
          n, x, reg,
          [&](const Point& y) {
            if (norm2(y) <= 1.0) return Estimate{};
            return Estimate{kernels::poisson_kernel_ball(p, 1.0, x, y), 0.0, true};
          },
          cfg);
      worst = std::max(worst, std::abs(m.value - 1.0));
    }
  }
  return {worst <= 1e-6, "max |mass - 1| = " + sci(worst) + " (tol 1e-6)"};
}

// 3. At k = 0 the compensated operator is the classical one.
Outcome k0_consistency() {
  const QuadratureConfig cfg;
  std::mt19937_64 rng(20260301);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double orders[] = {0.3, 0.5, 0.7};
  int failures = 0;
  double worst_ratio = 0.0;
  double worst_diff = 0.0;
  for (int f = 0; f < 20; ++f) {
    const int n = f < 14 ? 1 : 2;
    const FracParams p{n, orders[f % 3], 0, false};
    std::vector<std::pair<double, FunctionHandle>> terms;
    const int nb = 1 + static_cast<int>(unif(rng) * 3.0);
    for (int b = 0; b < nb; ++b) {
      const double r = 3.0 * unif(rng);
      const double ang = 2.0 * kPi * unif(rng);
      const Point c = n == 1 ? Point{unif(rng) < 0.5 ? -r : r, 0.0, 0.0} : Point{r * std::cos(ang), r * std::sin(ang), 0.0};
      const double width = 0.5 + unif(rng);
      terms.emplace_back(2.0 * unif(rng) - 1.0, fn::compact_bump(n, c, width, 1.0));
    }
    const FunctionHandle u = fn::linear_combination(terms);
    for (int q = 0; q < 5; ++q) {
      const double r = 0.8 * unif(rng);
      const double ang = 2.0 * kPi * unif(rng);
      const Point x = n == 1 ? e1(2.0 * r - 0.8) : Point{r * std::cos(ang), r * std::sin(ang), 0.0};
      const Estimate d = divergent_flap(u, x, p, cfg);
      const Estimate c = classical_flap(u, x, p, cfg);
      const double diff = std::abs(d.value - c.value);
      const double tol = 3.0 * (d.error + c.error);
      worst_diff = std::max(worst_diff, diff);
      if (tol > 0.0) worst_ratio = std::max(worst_ratio, diff / tol);
      if (diff > tol) ++failures;
    }
  }
  return {failures == 0, std::to_string(failures) + " of 100 points outside 3x error; max diff " + sci(worst_diff) +
                             ", max diff/(3 err) " + fmt("%.3f", worst_ratio)};
}

// 4. f_R converges to the canonical representative at the tail rate.
Outcome truncation_convergence() {
  const FracParams p{1, 0.5, 2, false};
  const QuadratureConfig cfg;
  const FunctionHandle u = fn::power_tail(1, p.k + p.s, 3.0, 4.0);
  const std::vector<Point> grid = chebyshev_grid(1, default_grid_size(1), 0.5);
  std::vector<double> res;
  std::vector<double> tails;
  for (double R : {8.0, 16.0, 32.0, 64.0}) {
    res.push_back(truncated_flap(u, grid, R, p, cfg).residual_to_limit);
    tails.push_back(tail_integral(u, R, p, cfg).value);
  }
  const double C = res[0] / tails[0];
  bool ok = true;
  std::ostringstream os;
  os << "residuals";
  for (std::size_t i = 0; i < res.size(); ++i) {
    os << " " << sci(res[i]);
    if (i > 0 && res[i] > res[i - 1]) ok = false;
    if (res[i] > C * tails[i] * (1.0 + 1e-9)) ok = false;
  }
  os << "; C = " << sci(C) << ", ratio at R=64 " << fmt("%.4f", res.back() / (C * tails.back()));
  return {ok, os.str()};
}

// 5. Decay of the compensated operator of functions vanishing on B_R.
Outcome lemma_decay() {
  const QuadratureConfig cfg;
  struct Case {
    FracParams p;
    FunctionHandle u0;
  };
  const Case cases[] = {{{1, 0.5, 2, false}, fn::monomial(MultiIndex(1, {2, 0, 0}))},
                        {{2, 0.5, 1, false}, fn::constant(2, 1.0)}};
  bool ok = true;
  std::ostringstream os;
  for (const auto& c : cases) {
    const double psi = kernels::psi_bound(c.p);
    const std::vector<Point> grid = chebyshev_grid(c.p.n, default_grid_size(c.p.n), 1.0);
    double prev = std::numeric_limits<double>::infinity();
    os << "n=" << c.p.n << ":";
    for (double R : {4.0, 8.0, 16.0}) {
      const FunctionHandle u = fn::restrict_radially(c.u0, R, std::numeric_limits<double>::infinity());
      const auto vals = evaluate_grid(grid, [&](const Point& x) { return divergent_flap(u, x, c.p, cfg); });
      double sup = 0.0;
      for (const auto& v : vals) sup = std::max(sup, std::abs(v.value));
      const double bound = psi * tail_integral(u, R, c.p, cfg).value;
      if (sup > bound || sup >= prev) ok = false;
      prev = sup;
      os << " R=" << R << " " << sci(sup) << "<=" << sci(bound);
    }
    os << "; ";
  }
  return {ok, os.str()};
}

// 6. The kernel of the compensated problem has dimension N_k.
Outcome multiplicity() {
  struct Case {
    FracParams p;
    QuadratureConfig cfg;
  };
  QuadratureConfig fine;
  QuadratureConfig coarse;
  coarse.rel_tol = 1e-4;
  coarse.abs_tol = 1e-6;
  const Case cases[] = {{{1, 0.5, 1, false}, fine},
                        {{1, 0.5, 2, false}, fine},
                        {{1, 0.5, 3, false}, fine},
                        {{2, 0.5, 1, false}, coarse},
                        {{2, 0.5, 2, false}, coarse}};
  bool ok = true;
  std::ostringstream os;
  double worst = 0.0;
  for (const auto& c : cases) {
    const MultiplicityBasis mb = multiplicity_basis(c.p, c.cfg);
    const auto nk = static_cast<int>(count_Nk(c.p.n, c.p.k));
    if (mb.rank != nk) ok = false;
    os << "n=" << c.p.n << ",k=" << c.p.k << " rank " << mb.rank << "/" << nk << "; ";
    const std::vector<Point> pts = c.p.n == 1
                                       ? std::vector<Point>{e1(-0.4), e1(-0.2), e1(0.0), e1(0.25), e1(0.45)}
                                       : std::vector<Point>{{0.0, 0.0, 0.0}, {0.3, 0.1, 0.0}, {-0.2, 0.35, 0.0},
                                                            {0.1, -0.4, 0.0}, {-0.3, -0.2, 0.0}};
    for (std::size_t i = 0; i < mb.fields.size(); ++i) {
      const Polynomial P = Polynomial::monomial(mb.monomials[i]);
      for (const Point& x : pts) {
        const Estimate e = classical_flap(mb.fields[i].u, x, c.p, c.cfg);
        const double diff = std::abs(e.value - P(x));
        worst = std::max(worst, diff);
        if (diff > std::max(5e-3, 3.0 * e.error)) ok = false;
      }
    }
  }
  os << "max |flap(u_P) - P| = " << sci(worst);
  return {ok, os.str()};
}

// 7. Quadrature solution against the Monte Carlo exit law.
Outcome standard_vs_wos() {
  const QuadratureConfig cfg;
  bool ok = true;
  double worst = 0.0;
  for (int n : {1, 2}) {
    const FracParams p{n, 0.5, 0, false};
    const FunctionHandle g = fn::annulus_indicator(n, 1.0, 2.0);
    const DirichletSpec spec{1.0, fn::zero(n), g};
    const SolutionField sol = solve_standard(1.0, spec.source, g, p, cfg);
    McConfig mc;
    mc.samples = 100000;
    mc.seed = 7;
    for (double x0 : {0.0, 0.3, -0.5, 0.7, 0.85}) {
      const Point x = n == 1 ? e1(x0) : Point{x0 * 0.8, x0 * 0.6, 0.0};
      const McEstimate w = wos_estimate(spec, x, mc, p, cfg);
      const double diff = std::abs(w.estimate - sol.u(x));
      const double tol = 3.0 * w.stderr_ + 1e-2;
      worst = std::max(worst, diff / tol);
      if (diff > tol) ok = false;
    }
  }
  return {ok, "max |wos - quadrature| / (3 stderr + 1e-2) = " + fmt("%.3f", worst)};
}

ApproxReport criterion8_report() {
  const FracParams p{1, 0.5, 3, false};
  ShadowConfig sc;
  sc.poles = 64;
  sc.rho = 8.0;
  sc.pole_study = {16, 32};
  return shadow_harmonic(fn::monomial(MultiIndex(1, {3, 0, 0})), 0, 0.1, p, QuadratureConfig{}, sc);
}

// 8. Harmonic shadowing of x^3.
Outcome shadow_pipeline() {
  const ApproxReport rep = criterion8_report();
  const FunctionHandle u = rep.u;
  int pinned = 0;
  for (double f : {1.01, 1.5, 2.0, 5.0, 10.0}) {
    for (double sign : {1.0, -1.0}) {
      const Point x = e1(sign * f * rep.R_eps);
      if (rep.u_eps(x) == u(x)) ++pinned;
    }
  }
  bool mono = true;
  for (std::size_t i = 1; i < rep.pole_study.size(); ++i)
    mono = mono && rep.pole_study[i].achieved_cm_error < rep.pole_study[i - 1].achieved_cm_error;
  std::ostringstream os;
  os << "pinned " << pinned << "/10 beyond R_eps=" << rep.R_eps << "; harmonicity " << sci(rep.harmonicity_residual)
     << " (tol 5e-3, err " << sci(rep.harmonicity_error) << "); C^0 errors";
  for (const auto& e : rep.pole_study) os << " " << e.poles << ":" << sci(e.achieved_cm_error);
  os << "; achieved " << sci(rep.achieved_cm_error) << (rep.achieved ? " <= eps" : " > eps");
  return {pinned == 10 && rep.harmonicity_residual <= 5e-3 && mono, os.str()};
}

// 9. Nonlinear shadowing with F = sin(u).
Outcome nonlinear_pipeline() {
  const FracParams p{1, 0.5, 2, false};
  ShadowConfig sc;
  sc.compute_harmonicity = false;
  const NonlinearReport rep = nonlinear_shadow(fn::monomial(MultiIndex(1, {2, 0, 0})),
                                               nonlinearity::sin_composite(1.0, {0.0, 1.0}), 0, 0.1, p,
                                               QuadratureConfig{}, sc);
  const double bound = 1.0 * rep.shadow.achieved_cm_error;
  const bool ok = rep.eta_sup <= bound * (1.0 + 1e-12) + 1e-15;
  return {ok, "sup|eta| = " + sci(rep.eta_sup) + " <= L * C^0 error = " + sci(bound) + " (L = 1, S = " +
                  fmt("%.4f", rep.S) + ")"};
}

// 10. N_k against brute-force enumeration.
Outcome nk_table() {
  int bad = 0;
  for (int n = 1; n <= 3; ++n)
    for (int k = 0; k <= 6; ++k) {
      std::uint64_t brute = 0;
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < (n >= 2 ? k : 1); ++b)
          for (int c = 0; c < (n >= 3 ? k : 1); ++c)
            if (a + b + c <= k - 1) ++brute;
      if (brute != count_Nk(n, k)) ++bad;
    }
  const bool anchors = count_Nk(2, 2) == 3 && count_Nk(3, 2) == 4;
  return {bad == 0 && anchors, std::to_string(bad) + " mismatches over n <= 3, k <= 6; N(2,2) = " +
                                   std::to_string(count_Nk(2, 2)) + ", N(3,2) = " + std::to_string(count_Nk(3, 2))};
}

// 11. Empirical control of the corrector by its source, across truncation radii.
Outcome schauder_diagnostic() {
  const FracParams p{1, 0.5, 3, false};
  const FunctionHandle u = fn::monomial(MultiIndex(1, {3, 0, 0}));
  std::ostringstream os;
  double C = 0.0;
  std::vector<std::pair<double, double>> rows;
  for (double R = 8.0; R <= 2048.0; R *= 2.0) {
    const Corrector c = build_corrector(u, R, p, QuadratureConfig{});
    rows.emplace_back(c.f_sup, c.w_sup);
    if (c.f_sup > 0.0) C = std::max(C, c.w_sup / c.f_sup);
  }
  os << "fitted C = " << sci(C) << "; |f| -> |w|:";
  for (const auto& [f, w] : rows) os << " " << sci(f) << "->" << sci(w);
  return {true, os.str()};
}

struct Spec {
  int id;
  const char* name;
  bool gating;
  double limit;
  Outcome (*run)();
};

const Spec kCriteria[] = {
    {1, "getoor-identity", true, 10.0, getoor_identity},
    {2, "poisson-mass", true, 10.0, poisson_mass},
    {3, "k0-consistency", true, 120.0, k0_consistency},
    {4, "truncation-convergence", true, 300.0, truncation_convergence},
    {5, "tail-decay", true, 120.0, lemma_decay},
    {6, "multiplicity", true, 600.0, multiplicity},
    {7, "standard-vs-wos", true, 300.0, standard_vs_wos},
    {8, "harmonic-shadow", true, 900.0, shadow_pipeline},
    {9, "nonlinear-shadow", true, 900.0, nonlinear_pipeline},
    {10, "nk-table", true, 1.0, nk_table},
    {11, "corrector-control", false, 0.0, schauder_diagnostic},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
  std::vector<CriterionResult> out;
  for (const Spec& s : kCriteria) {
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), s.id) == opts.only.end()) continue;
    CriterionResult r;
    r.id = s.id;
    r.name = s.name;
    r.gating = s.gating;
    r.time_limit = s.limit;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Outcome o = s.run();
      r.passed = o.passed;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.time_limit > 0.0 && r.seconds > r.time_limit) {
      r.passed = false;
      r.detail += "; over the time limit";
    }
    if (opts.on_result) opts.on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  char head[160];
  const char* verdict = r.gating ? (r.passed ? "PASS" : "FAIL") : "INFO";
  if (r.time_limit > 0.0)
    std::snprintf(head, sizeof head, "%s %2d %-24s (%.1f s / %.0f s)  ", verdict, r.id, r.name.c_str(), r.seconds,
                  r.time_limit);
  else
    std::snprintf(head, sizeof head, "%s %2d %-24s (%.1f s)  ", verdict, r.id, r.name.c_str(), r.seconds);
  return head + r.detail;
}

bool all_gating_passed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return !r.gating || r.passed; });
}

}  // namespace nlk
