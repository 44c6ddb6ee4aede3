// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlk/nlk.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "nlk/acceptance.hpp"
#include "nlk/commands.hpp"
#include "nlk/config.hpp"
#include "nlk/dirichlet.hpp"
#include "nlk/error.hpp"
#include "nlk/operator.hpp"
#include "nlk/parallel.hpp"

struct nlk_field {
  nlk::FunctionHandle f;
};

struct nlk_solution {
  nlk::SolutionField sol;
};

namespace {

thread_local std::string g_last_error;

template <class F>
nlk_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const nlk::Error& e) {
    g_last_error = e.what();
    return static_cast<nlk_status>(static_cast<int>(e.code()));
  } catch (const nlk::json::exception& e) {
    g_last_error = std::string("invalid JSON: ") + e.what();
    return NLK_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return NLK_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NLK_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return NLK_INTERNAL;
  }
}

void need(const void* ptr, const char* what) {
  nlk::require(ptr != nullptr, nlk::ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

nlk::FracParams params(const nlk_params* p) {
  need(p, "params");
  nlk::FracParams fp;
  fp.n = p->n;
  fp.s = p->s;
  fp.k = p->k;
  fp.normalized = p->normalized != 0;
  fp.validate();
  return fp;
}

nlk::QuadratureConfig quadrature(const nlk_quadrature* q) {
  nlk::QuadratureConfig c;
  if (q == nullptr) return c;
  c.rel_tol = q->rel_tol;
  c.abs_tol = q->abs_tol;
  c.max_subdivisions = q->max_subdivisions;
  c.split_radius = q->split_radius;
  c.tail_cut = q->tail_cut;
  c.validate();
  return c;
}

nlk::Point point(const double* x, int n) {
  need(x, "point");
  nlk::Point p{};
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = x[i];
  return p;
}

nlk_estimate to_c(const nlk::Estimate& e) { return {e.value, e.error, e.converged ? 1 : 0}; }

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void check_dims(const nlk_field* u, const nlk::FracParams& p) {
  need(u, "field");
  nlk::require(u->f.dim() == p.n, nlk::ErrorCode::kInvalidArgument, "field dimension differs from params.n");
}

}  // namespace

extern "C" {

const char* nlk_version(void) { return NLK_VERSION; }

const char* nlk_last_error(void) { return g_last_error.c_str(); }

const char* nlk_status_name(nlk_status status) {
  switch (status) {
    case NLK_OK: return "ok";
    case NLK_CHECK_FAILED: return "check-failed";
    case NLK_INTERNAL: return "internal";
    default:
      if (status >= 1 && status <= 10) return nlk::error_code_name(static_cast<nlk::ErrorCode>(status));
      return "unknown";
  }
}

nlk_quadrature nlk_quadrature_default(void) {
  const nlk::QuadratureConfig c;
  return {c.rel_tol, c.abs_tol, c.max_subdivisions, c.split_radius, c.tail_cut};
}

nlk_status nlk_set_threads(int threads) {
  return guarded([&] {
    nlk::require(threads >= 1, nlk::ErrorCode::kInvalidArgument, "threads must be >= 1");
    nlk::set_thread_count(threads);
    return NLK_OK;
  });
}

nlk_status nlk_field_from_json(const char* spec, int n, double s, nlk_field** out) {
  return guarded([&] {
    need(spec, "spec");
    need(out, "out");
    nlk::require(n >= 1 && n <= 3, nlk::ErrorCode::kInvalidArgument, "n must be 1, 2 or 3");
    *out = new nlk_field{nlk::function_from_json(nlk::json::parse(spec), n, s)};
    return NLK_OK;
  });
}

void nlk_field_free(nlk_field* field) { delete field; }

nlk_status nlk_field_eval(const nlk_field* field, const double* x, double* out) {
  return guarded([&] {
    need(field, "field");
    need(out, "out");
    *out = field->f(point(x, field->f.dim()));
    return NLK_OK;
  });
}

nlk_status nlk_classical(const nlk_field* u, const double* x, const nlk_params* p, const nlk_quadrature* quad,
                         nlk_estimate* out) {
  return guarded([&] {
    const nlk::FracParams fp = params(p);
    check_dims(u, fp);
    need(out, "out");
    *out = to_c(nlk::classical_flap(u->f, point(x, fp.n), fp, quadrature(quad)));
    return NLK_OK;
  });
}

nlk_status nlk_divergent(const nlk_field* u, const double* x, const nlk_params* p, const nlk_quadrature* quad,
                         nlk_estimate* out) {
  return guarded([&] {
    const nlk::FracParams fp = params(p);
    check_dims(u, fp);
    need(out, "out");
    *out = to_c(nlk::divergent_flap(u->f, point(x, fp.n), fp, quadrature(quad)));
    return NLK_OK;
  });
}

nlk_status nlk_tail_integral(const nlk_field* u, double R, const nlk_params* p, const nlk_quadrature* quad,
                             nlk_estimate* out) {
  return guarded([&] {
    const nlk::FracParams fp = params(p);
    check_dims(u, fp);
    need(out, "out");
    *out = to_c(nlk::tail_integral(u->f, R, fp, quadrature(quad)));
    return NLK_OK;
  });
}

nlk_status nlk_count_Nk(int n, int k, uint64_t* out) {
  return guarded([&] {
    need(out, "out");
    *out = nlk::count_Nk(n, k);
    return NLK_OK;
  });
}

nlk_status nlk_solve(double r, const nlk_field* f, const nlk_field* g, int divergent, const nlk_params* p,
                     const nlk_quadrature* quad, nlk_solution** out) {
  return guarded([&] {
    const nlk::FracParams fp = params(p);
    check_dims(f, fp);
    check_dims(g, fp);
    need(out, "out");
    const nlk::QuadratureConfig q = quadrature(quad);
    nlk::SolutionField sol = divergent ? nlk::solve_divergent({r, f->f, g->f}, fp, q)
                                       : nlk::solve_standard(r, f->f, g->f, fp, q);
    *out = new nlk_solution{std::move(sol)};
    return NLK_OK;
  });
}

nlk_status nlk_solution_eval(const nlk_solution* sol, const double* x, nlk_estimate* out) {
  return guarded([&] {
    need(sol, "solution");
    need(out, "out");
    *out = to_c(sol->sol.u.estimate(point(x, sol->sol.u.dim())));
    return NLK_OK;
  });
}

void nlk_solution_free(nlk_solution* sol) { delete sol; }

nlk_status nlk_run_command(const char* command, const char* config_json, const char* out_dir, char** summary) {
  return guarded([&] {
    need(command, "command");
    need(config_json, "config");
    need(out_dir, "out_dir");
    const nlk::CommandOutput res = nlk::run_command(command, nlk::json::parse(config_json), out_dir);
    if (summary != nullptr) {
      nlk::json s = res.summary;
      s["files"] = res.files;
      *summary = dup(s.dump(2));
    }
    return NLK_OK;
  });
}

nlk_status nlk_selftest(const int* ids, size_t count, nlk_criterion_callback callback, void* user, char** summary) {
  return guarded([&] {
    nlk::AcceptanceOptions opts;
    if (count > 0) need(ids, "ids");
    for (size_t i = 0; i < count; ++i) opts.only.push_back(ids[i]);
    if (callback != nullptr)
      opts.on_result = [&](const nlk::CriterionResult& r) {
        callback(r.id, r.passed ? 1 : 0, r.gating ? 1 : 0, nlk::format_result(r).c_str(), user);
      };
    const auto results = nlk::run_acceptance(opts);
    if (summary != nullptr) {
      nlk::json arr = nlk::json::array();
      for (const auto& r : results)
        arr.push_back({{"id", r.id},
                       {"name", r.name},
                       {"gating", r.gating},
                       {"passed", r.passed},
                       {"detail", r.detail},
                       {"seconds", r.seconds}});
      *summary = dup(nlk::json{{"criteria", arr}, {"passed", nlk::all_gating_passed(results)}}.dump(2));
    }
    if (!nlk::all_gating_passed(results)) {
      g_last_error = "a gating acceptance criterion failed";
      return NLK_CHECK_FAILED;
    }
    return NLK_OK;
  });
}

void nlk_string_free(char* str) { std::free(str); }

}  // extern "C"
