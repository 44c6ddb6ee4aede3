// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlk/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "nlk/approx.hpp"
#include "nlk/dirichlet.hpp"
#include "nlk/error.hpp"
#include "nlk/grid.hpp"
#include "nlk/operator.hpp"
#include "nlk/oracle.hpp"
#include "nlk/parallel.hpp"

namespace nlk {

namespace {

namespace fs = std::filesystem;

std::string num(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json point_json(const Point& x, int n) {
  json a = json::array();
  for (int i = 0; i < n; ++i) a.push_back(x[static_cast<std::size_t>(i)]);
  return a;
}

std::vector<std::string> coord_names(int n) {
  std::vector<std::string> c;
  for (int i = 1; i <= n; ++i) c.push_back("x" + std::to_string(i));
  return c;
}

class Context {
 public:
  Context(std::string name, const json& cfg, const std::string& out_dir) : name_(std::move(name)), cfg_(cfg) {
    check_keys(cfg, {"params", "quadrature", "grid", "function", "seed", "output", "threads", "eval", "convergence",
                     "solve", "multiplicity", "shadow", "nonlinear", "oracle"},
               "config");
    hash_ = config_hash(cfg);
    p = params_from_json(cfg.value("params", json::object()));
    q = quadrature_from_json(cfg.value("quadrature", json::object()));
    const json g = cfg.value("grid", json::object());
    check_keys(g, {"size", "radius"}, "grid");
    try {
      grid_size = g.value("size", default_grid_size(p.n));
      if (g.contains("radius")) grid_radius = g.at("radius").get<double>();
      seed = cfg.value("seed", std::uint64_t{1});
    } catch (const json::exception&) {
      fail(ErrorCode::kInvalidArgument, "grid.size, grid.radius or seed has the wrong type");
    }
    require(grid_size >= 1, ErrorCode::kInvalidArgument, "grid.size must be positive");
    if (cfg.contains("threads")) {
      require(cfg["threads"].is_number_integer() && cfg["threads"].get<int>() >= 1, ErrorCode::kInvalidArgument,
              "threads must be a positive integer");
      set_thread_count(cfg["threads"].get<int>());
    }
    out_ = out_dir;
    std::error_code ec;
    fs::create_directories(out_, ec);
    require(!ec, ErrorCode::kInvalidArgument, "cannot create output directory " + out_dir + ": " + ec.message());
  }

  json section(const char* key, std::initializer_list<const char*> allowed) const {
    const json s = cfg_.value(key, json::object());
    check_keys(s, allowed, key);
    return s;
  }

  FunctionHandle function(const json& spec, const char* what) const {
    require(!spec.is_null(), ErrorCode::kInvalidArgument, std::string("missing function spec '") + what + "'");
    return function_from_json(spec, p.n, p.s);
  }

  std::vector<Point> grid(double default_radius) const {
    return chebyshev_grid(p.n, grid_size, grid_radius.value_or(default_radius));
  }

  void write_csv(const std::string& file, const std::vector<std::string>& cols,
                 const std::vector<std::vector<double>>& rows) {
    std::ostringstream os;
    os << header() << "\n";
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << num(r[i]);
      os << "\n";
    }
    write(file, os.str());
  }

  void write_json(const std::string& file, json body) {
    body["meta"] = meta();
    write(file, body.dump(2) + "\n");
  }

  void write_svg(const std::string& file, const std::vector<double>& x,
                 const std::vector<std::pair<std::string, std::vector<double>>>& series) {
    const double W = 640, H = 400, pad = 40;
    double ymin = 0.0, ymax = 0.0;
    for (const auto& [name, ys] : series)
      for (double y : ys)
        if (std::isfinite(y)) ymin = std::min(ymin, y), ymax = std::max(ymax, y);
    if (ymax - ymin < 1e-12) ymax = ymin + 1.0;
    const double xmin = x.front(), xmax = x.back();
    auto sx = [&](double v) { return pad + (v - xmin) / (xmax - xmin) * (W - 2 * pad); };
    auto sy = [&](double v) { return H - pad - (v - ymin) / (ymax - ymin) * (H - 2 * pad); };
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    std::ostringstream os;
    os << "<?xml version=\"1.0\"?>\n<!-- " << header().substr(2) << " -->\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    os << "<rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << W - 2 * pad << "\" height=\"" << H - 2 * pad
       << "\" fill=\"none\" stroke=\"#888\"/>\n";
    if (ymin < 0.0 && ymax > 0.0)
      os << "<line x1=\"" << pad << "\" y1=\"" << sy(0) << "\" x2=\"" << W - pad << "\" y2=\"" << sy(0)
         << "\" stroke=\"#ccc\"/>\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
      os << "<polyline fill=\"none\" stroke=\"" << colors[k % 4] << "\" points=\"";
      for (std::size_t i = 0; i < x.size(); ++i)
        if (std::isfinite(series[k].second[i])) os << num(sx(x[i])) << "," << num(sy(series[k].second[i])) << " ";
      os << "\"/>\n";
      os << "<text x=\"" << pad + 8 << "\" y=\"" << pad + 16 * (k + 1) << "\" fill=\"" << colors[k % 4]
         << "\" font-size=\"12\">" << series[k].first << "</text>\n";
    }
    os << "</svg>\n";
    write(file, os.str());
  }

  std::vector<std::string> files;
  FracParams p;
  QuadratureConfig q;
  int grid_size = 0;
  std::optional<double> grid_radius;
  std::uint64_t seed = 1;

 private:
  std::string header() const {
    return "# nonlocal-kit " + std::string(NLK_VERSION) + " config-hash " + hash_ + " command " + name_;
  }
  json meta() const { return {{"version", NLK_VERSION}, {"config_hash", hash_}, {"command", name_}}; }
  void write(const std::string& file, const std::string& text) {
    const fs::path path = out_ / file;
    std::ofstream f(path, std::ios::binary);
    require(static_cast<bool>(f), ErrorCode::kInvalidArgument, "cannot write " + path.string());
    f << text;
    files.push_back(path.string());
  }

  std::string name_;
  json cfg_;
  std::string hash_;
  fs::path out_;
};

template <class T>
T field(const json& s, const char* key, T fallback) {
  try {
    return s.value(key, fallback);
  } catch (const json::exception&) {
    fail(ErrorCode::kInvalidArgument, std::string(key) + " has the wrong type");
  }
}

json cmd_eval(Context& c, const json& cfg) {
  const json s = c.section("eval", {"points"});
  const FunctionHandle u = c.function(cfg.value("function", json()), "function");
  const std::vector<Point> pts = s.contains("points") ? points_from_json(s["points"], c.p.n) : c.grid(0.9);
  const auto& t = u.traits();
  const bool classical_ok = !std::isfinite(t.tail_exponent) || t.tail_exponent < 2.0 * c.p.s;
  require_in_Uk(u, c.p);
  std::vector<Estimate> cl(pts.size(), Estimate{NAN, NAN, true});
  if (classical_ok) cl = evaluate_grid(pts, [&](const Point& x) { return classical_flap(u, x, c.p, c.q); });
  const auto dv = evaluate_grid(pts, [&](const Point& x) { return divergent_flap(u, x, c.p, c.q); });
  std::vector<std::string> cols = coord_names(c.p.n);
  for (const char* k : {"classical", "classical_error", "divergent", "divergent_error", "converged"}) cols.push_back(k);
  std::vector<std::vector<double>> rows;
  double max_err = 0.0;
  bool conv = true;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<double> r(pts[i].begin(), pts[i].begin() + c.p.n);
    r.insert(r.end(), {cl[i].value, cl[i].error, dv[i].value, dv[i].error,
                       (cl[i].converged && dv[i].converged) ? 1.0 : 0.0});
    rows.push_back(std::move(r));
    max_err = std::max(max_err, dv[i].error);
    conv = conv && dv[i].converged && cl[i].converged;
  }
  c.write_csv("eval.csv", cols, rows);
  json out = {{"points", pts.size()}, {"classical_defined", classical_ok}, {"max_divergent_error", max_err},
              {"converged", conv}};
  c.write_json("eval.json", out);
  return out;
}

json cmd_convergence(Context& c, const json& cfg) {
  const json s = c.section("convergence", {"radii"});
  const FunctionHandle u = c.function(cfg.value("function", json()), "function");
  const auto radii = field<std::vector<double>>(s, "radii", {8.0, 16.0, 32.0, 64.0});
  const std::vector<Point> pts = c.grid(0.5);
  std::vector<std::string> pcols = {"R"};
  for (const auto& n : coord_names(c.p.n)) pcols.push_back(n);
  for (const char* k : {"f_R", "f_R_error", "limit"}) pcols.push_back(k);
  std::vector<std::vector<double>> summary_rows;
  std::vector<std::vector<double>> point_rows;
  json reports = json::array();
  for (double R : radii) {
    const TruncationReport rep = truncated_flap(u, pts, R, c.p, c.q);
    const double tail = tail_integral(u, R, c.p, c.q).value;
    summary_rows.push_back({R, tail, rep.residual_to_limit});
    json coefs = json::array();
    for (const auto& term : rep.P_R.terms())
      coefs.push_back({{"alpha", term.alpha.str()}, {"coef", term.coef}});
    reports.push_back({{"R", R}, {"tail_integral", tail}, {"residual_to_limit", rep.residual_to_limit}, {"P_R", coefs}});
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::vector<double> r = {R};
      r.insert(r.end(), pts[i].begin(), pts[i].begin() + c.p.n);
      r.insert(r.end(), {rep.f_R[i], rep.f_R_error[i], rep.limit[i]});
      point_rows.push_back(std::move(r));
    }
  }
  c.write_csv("convergence.csv", {"R", "tail_integral", "residual_to_limit"}, summary_rows);
  c.write_csv("truncation.csv", pcols, point_rows);
  json out = {{"reports", reports}};
  c.write_json("convergence.json", out);
  return out;
}

json cmd_solve(Context& c, const json&) {
  const json s = c.section("solve", {"radius", "source", "exterior", "mode", "points"});
  const double r = field<double>(s, "radius", 1.0);
  const FunctionHandle f = s.contains("source") ? c.function(s["source"], "source") : fn::zero(c.p.n);
  const FunctionHandle g = s.contains("exterior") ? c.function(s["exterior"], "exterior") : fn::zero(c.p.n);
  const std::string mode = field<std::string>(s, "mode", "divergent");
  require(mode == "standard" || mode == "divergent", ErrorCode::kInvalidArgument,
          "solve.mode must be 'standard' or 'divergent'");
  const SolutionField sol = mode == "standard" ? solve_standard(r, f, g, c.p, c.q)
                                               : solve_divergent({r, f, g}, c.p, c.q);
  const std::vector<Point> pts = s.contains("points") ? points_from_json(s["points"], c.p.n) : c.grid(0.9 * r);
  std::vector<Estimate> vals(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { vals[i] = sol.u.estimate(pts[i]); });
  std::vector<std::string> cols = coord_names(c.p.n);
  for (const char* k : {"u", "error", "converged"}) cols.push_back(k);
  std::vector<std::vector<double>> rows;
  double max_err = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<double> row(pts[i].begin(), pts[i].begin() + c.p.n);
    row.insert(row.end(), {vals[i].value, vals[i].error, vals[i].converged ? 1.0 : 0.0});
    rows.push_back(std::move(row));
    max_err = std::max(max_err, vals[i].error);
  }
  c.write_csv("solution.csv", cols, rows);
  json out = {{"mode", mode}, {"radius", r}, {"points", pts.size()}, {"max_error", max_err}};
  c.write_json("solve.json", out);
  return out;
}

json cmd_multiplicity(Context& c, const json&) {
  const json s = c.section("multiplicity", {"grid_radius"});
  const double gr = field<double>(s, "grid_radius", 0.9);
  const MultiplicityBasis mb = multiplicity_basis(c.p, c.q, c.grid_size, gr);
  const std::size_t m = mb.monomials.size();
  std::vector<std::string> gcols;
  json monos = json::array();
  for (const auto& a : mb.monomials) {
    gcols.push_back("u_" + a.str());
    monos.push_back(a.str());
  }
  std::vector<std::vector<double>> grows;
  for (std::size_t i = 0; i < m; ++i) grows.emplace_back(mb.gram.begin() + i * m, mb.gram.begin() + (i + 1) * m);
  c.write_csv("gram.csv", gcols, grows);
  std::vector<std::string> bcols = coord_names(c.p.n);
  bcols.insert(bcols.end(), gcols.begin(), gcols.end());
  std::vector<std::vector<double>> brows(mb.grid.size());
  parallel_for(mb.grid.size(), [&](std::size_t i) {
    std::vector<double> row(mb.grid[i].begin(), mb.grid[i].begin() + c.p.n);
    for (const auto& f : mb.fields) row.push_back(f.u(mb.grid[i]));
    brows[i] = std::move(row);
  });
  c.write_csv("basis.csv", bcols, brows);
  json out = {{"N_k", count_Nk(c.p.n, c.p.k)},
              {"rank", mb.rank},
              {"monomials", monos},
              {"singular_values", mb.singular_values},
              {"rank_matches", static_cast<std::uint64_t>(mb.rank) == count_Nk(c.p.n, c.p.k)}};
  c.write_json("multiplicity.json", out);
  return out;
}

json report_json(const ApproxReport& r, int n) {
  json poles = json::array();
  for (const auto& y : r.poles) poles.push_back(point_json(y, n));
  json study = json::array();
  for (const auto& e : r.pole_study) study.push_back({{"poles", e.poles}, {"achieved_cm_error", e.achieved_cm_error}});
  return {{"epsilon", r.epsilon},
          {"m", r.m},
          {"rho", r.rho},
          {"Rbar", r.Rbar},
          {"R_eps", r.R_eps},
          {"tail_at_Rbar", r.tail_at_Rbar},
          {"psi_bound", r.psi_bound},
          {"poles", poles},
          {"weights", r.weights},
          {"fit_rank", r.fit.rank},
          {"fit_condition", r.fit.condition},
          {"achieved_cm_error", r.achieved_cm_error},
          {"achieved", r.achieved},
          {"pole_study", study},
          {"harmonicity_residual", r.harmonicity_residual},
          {"harmonicity_error", r.harmonicity_error},
          {"harmonicity_converged", r.harmonicity_converged},
          {"corrector_source_sup", r.corrector.f_sup},
          {"corrector_sup", r.corrector.w_sup}};
}

struct Curve {
  int points = 401;
  double extent = 2.0;
};

Curve curve_from(const json& s) {
  Curve cv;
  if (!s.contains("curve")) return cv;
  check_keys(s["curve"], {"points", "extent"}, "curve");
  cv.points = field<int>(s["curve"], "points", cv.points);
  cv.extent = field<double>(s["curve"], "extent", cv.extent);
  require(cv.points >= 2 && cv.extent > 0.0, ErrorCode::kInvalidArgument, "curve needs >= 2 points and extent > 0");
  return cv;
}

std::vector<double> curve_x(const Curve& cv) {
  std::vector<double> x(static_cast<std::size_t>(cv.points));
  for (int i = 0; i < cv.points; ++i) x[static_cast<std::size_t>(i)] = -cv.extent + 2.0 * cv.extent * i / (cv.points - 1);
  return x;
}

std::vector<double> sample_curve(const FunctionHandle& f, const std::vector<double>& x) {
  std::vector<double> v(x.size());
  parallel_for(x.size(), [&](std::size_t i) { v[i] = f(Point{x[i], 0.0, 0.0}); });
  return v;
}

json cmd_shadow(Context& c, const json& cfg) {
  const json s = c.section("shadow", {"m", "epsilon", "dictionary", "curve"});
  const FunctionHandle u = c.function(cfg.value("function", json()), "function");
  const int m = field<int>(s, "m", 0);
  const double eps = field<double>(s, "epsilon", 0.1);
  const ShadowConfig sc = shadow_config_from_json(s.value("dictionary", json::object()));
  const Curve cv = curve_from(s);
  const ApproxReport rep = shadow_harmonic(u, m, eps, c.p, c.q, sc);
  json out = report_json(rep, c.p.n);
  c.write_json("shadow.json", out);

  const std::vector<double> x = curve_x(cv);
  const auto cu = sample_curve(u, x), ce = sample_curve(rep.u_eps, x), cvv = sample_curve(rep.v, x),
             cw = sample_curve(rep.corrector.w.u, x);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < x.size(); ++i) rows.push_back({x[i], cu[i], ce[i], cvv[i], cw[i]});
  c.write_csv("curves.csv", {"x1", "u", "u_eps", "v", "w"}, rows);
  if (c.p.n == 1) c.write_svg("shadow.svg", x, {{"u", cu}, {"u_eps", ce}});
  return out;
}

json cmd_nonlinear(Context& c, const json& cfg) {
  const json s = c.section("nonlinear", {"m", "epsilon", "h", "F", "dictionary", "curve"});
  const FunctionHandle u = c.function(cfg.value("function", json()), "function");
  const int m = field<int>(s, "m", 0);
  const double eps = field<double>(s, "epsilon", 0.1);
  const double h = field<double>(s, "h", 0.5);
  require(s.contains("F"), ErrorCode::kInvalidArgument, "nonlinear: missing nonlinearity 'F'");
  const Nonlinearity F = nonlinearity_from_json(s["F"], c.p.n, m);
  ShadowConfig sc = shadow_config_from_json(s.value("dictionary", json::object()));
  const Curve cv = curve_from(s);
  const NonlinearReport rep = nonlinear_shadow(u, F, m, eps, c.p, c.q, sc, h);
  json out = {{"shadow", report_json(rep.shadow, c.p.n)},
              {"h", rep.h},
              {"eta_sup", rep.eta_sup},
              {"S", rep.S},
              {"lipschitz", rep.lipschitz},
              {"lipschitz_declared", rep.lipschitz_declared},
              {"derivative_terms", rep.derivative_terms},
              {"bound", rep.bound},
              {"bound_holds", rep.bound_holds}};
  c.write_json("nonlinear.json", out);

  std::vector<std::string> ecols = coord_names(c.p.n);
  ecols.push_back("eta");
  std::vector<std::vector<double>> erows;
  for (std::size_t i = 0; i < rep.grid.size(); ++i) {
    std::vector<double> row(rep.grid[i].begin(), rep.grid[i].begin() + c.p.n);
    row.push_back(rep.eta[i]);
    erows.push_back(std::move(row));
  }
  c.write_csv("eta.csv", ecols, erows);
  const std::vector<double> x = curve_x(cv);
  const auto cu = sample_curve(u, x), ce = sample_curve(rep.u_eps, x), cvv = sample_curve(rep.v.u, x);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < x.size(); ++i) rows.push_back({x[i], cu[i], ce[i], cvv[i]});
  c.write_csv("curves.csv", {"x1", "u", "u_eps", "v"}, rows);
  if (c.p.n == 1) c.write_svg("nonlinear.svg", x, {{"u", cu}, {"u_eps", ce}, {"v", cvv}});
  return out;
}

json cmd_oracle(Context& c, const json&) {
  const json s = c.section("oracle", {"radius", "source", "exterior", "points", "monte_carlo"});
  const double r = field<double>(s, "radius", 1.0);
  const FunctionHandle f = s.contains("source") ? c.function(s["source"], "source") : fn::zero(c.p.n);
  const FunctionHandle g = s.contains("exterior") ? c.function(s["exterior"], "exterior") : fn::zero(c.p.n);
  const McConfig mc = mc_config_from_json(s.value("monte_carlo", json::object()), c.seed);
  std::vector<Point> pts;
  if (s.contains("points")) {
    pts = points_from_json(s["points"], c.p.n);
  } else {
    for (double t : {0.0, 0.3, -0.5, 0.7, 0.85}) pts.push_back({t * r, 0.0, 0.0});
  }
  const DirichletSpec spec{r, f, g};
  const SolutionField sol = solve_standard(r, f, g, c.p, c.q);
  std::vector<std::string> cols = coord_names(c.p.n);
  for (const char* k : {"estimate", "stderr", "boundary_mean", "green", "quadrature", "acceptance_rate"})
    cols.push_back(k);
  std::vector<std::vector<double>> rows;
  json est = json::array();
  for (const Point& x : pts) {
    const McEstimate e = wos_estimate(spec, x, mc, c.p, c.q);
    const double quad = sol.u(x);
    std::vector<double> row(x.begin(), x.begin() + c.p.n);
    row.insert(row.end(), {e.estimate, e.stderr_, e.boundary_mean, e.green.value, quad, e.acceptance_rate});
    rows.push_back(std::move(row));
    est.push_back({{"x", point_json(x, c.p.n)}, {"estimate", e.estimate}, {"stderr", e.stderr_}, {"quadrature", quad}});
  }
  c.write_csv("oracle.csv", cols, rows);
  json out = {{"samples", mc.samples}, {"seed", mc.seed}, {"streams", mc.streams}, {"estimates", est}};
  c.write_json("oracle.json", out);
  return out;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"eval",   "convergence", "solve", "multiplicity", "shadow",
                                                 "nonlinear-shadow", "oracle"};
  return names;
}

CommandOutput run_command(const std::string& name, const json& config, const std::string& out_dir) {
  Context c(name, config, out_dir);
  json summary;
  if (name == "eval") summary = cmd_eval(c, config);
  else if (name == "convergence") summary = cmd_convergence(c, config);
  else if (name == "solve") summary = cmd_solve(c, config);
  else if (name == "multiplicity") summary = cmd_multiplicity(c, config);
  else if (name == "shadow") summary = cmd_shadow(c, config);
  else if (name == "nonlinear-shadow") summary = cmd_nonlinear(c, config);
  else if (name == "oracle") summary = cmd_oracle(c, config);
  else fail(ErrorCode::kInvalidArgument, "unknown command '" + name + "'");
  return {summary, c.files};
}

}  // namespace nlk
