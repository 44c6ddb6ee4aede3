// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Shadowing: replacing a function inside a bounded set so that it solves a
// compensated fractional equation on B_1 while staying C^m-close to the
// original there and equal to it near infinity.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nlk/dirichlet.hpp"
#include "nlk/function.hpp"
#include "nlk/multi_index.hpp"
#include "nlk/quadrature.hpp"
#include "nlk/types.hpp"

namespace nlk {

/// Poisson kernels P_1(., y_j) with poles 1 < |y_j| < rho. Each entry is
/// s-harmonic in B_1 and carries a unit point mass at its pole.
struct Dictionary {
  int n = 1;
  double s = 0.5;
  double rho = 8.0;
  std::vector<Point> poles;

  FunctionHandle entry(std::size_t j) const;
  std::size_t size() const { return poles.size(); }
};

/// Poles with |y| - 1 log-spaced between min_gap and 0.9 (rho - 1). The
/// construction is nested: the first N poles for N = 2^j are the same
/// for every larger count that is a multiple of N (n = 1), or form a prefix
/// of one fixed low-discrepancy sequence (n >= 2).
Dictionary make_dictionary(int n, double s, int poles, double rho, double min_gap = 1e-3);

/// Sampled values of d^alpha of a function, |alpha| <= m, on a grid.
struct FitTarget {
  int n = 1;
  int m = 0;
  std::vector<Point> grid;
  std::vector<MultiIndex> orders;
  /// values[i * orders.size() + a] = d^{orders[a]} u(grid[i]).
  std::vector<double> values;
};

FitTarget sample_target(const FunctionHandle& u, const std::vector<Point>& grid, int m);

struct FitResult {
  std::vector<double> weights;
  /// Largest absolute mismatch over grid points and derivative orders.
  double fit_error = 0.0;
  int rank = 0;
  double condition = 0.0;
};

/// Minimizes sum |A w - b|^2 + ridge |w|^2 over dictionary weights, with
/// exact kernel derivatives. ridge = 0 on a numerically rank-deficient
/// system raises kIllConditioned.
FitResult fit_sharmonic(const FitTarget& target, const Dictionary& dict, double ridge, int max_poles = 4096);

/// sum_j weights[j] * entry(j).
FunctionHandle dictionary_field(const Dictionary& dict, std::span<const double> weights);

struct ShadowConfig {
  int poles = 64;
  double rho = 8.0;
  double min_gap = 1e-3;
  double ridge = 1e-10;
  int max_poles = 4096;
  /// Points per axis of the B_1 fit grid; 0 picks max(default, 2 * poles + 1) for n = 1.
  int grid_size = 0;
  /// Extra pole counts fitted against the same target; the main fit is always included.
  std::vector<int> pole_study = {16, 32};
  double safety = 10.0;
  double rbar_start = 8.0;
  double rbar_max = 1 << 20;
  bool compute_harmonicity = true;
  /// Points per axis of the B_{1/2} grid for the residual; 0 = default.
  int harmonicity_grid = 0;

  void validate() const;
};

/// The exterior corrector for a given truncation radius: f = compensated
/// operator of u 1_{|y| >= Rbar} cached on B_2, and w its B_2 standard solve.
struct Corrector {
  double Rbar = 0.0;
  FunctionHandle u_tilde;
  FunctionHandle f_eps;
  SolutionField w;
  double f_sup = 0.0;
  double w_sup = 0.0;
};

Corrector build_corrector(const FunctionHandle& u, double Rbar, const FracParams& p, const QuadratureConfig& cfg);

struct PoleStudyEntry {
  int poles = 0;
  double achieved_cm_error = 0.0;
};

struct ApproxReport {
  double epsilon = 0.0;
  int m = 0;
  double rho = 0.0;
  double Rbar = 0.0;
  double R_eps = 0.0;
  double tail_at_Rbar = 0.0;
  double psi_bound = 0.0;
  std::vector<Point> poles;
  std::vector<double> weights;
  FitResult fit;
  Corrector corrector;
  FunctionHandle u;
  FunctionHandle v;
  FunctionHandle u_eps;
  std::vector<Point> grid;
  /// Discretized C^m distance between u_eps and u on the grid.
  double achieved_cm_error = 0.0;
  bool achieved = false;
  std::vector<PoleStudyEntry> pole_study;
  /// mod_poly_distance of the compensated operator of u_eps to 0 on B_{1/2}.
  double harmonicity_residual = 0.0;
  /// Largest quadrature error estimate among those operator values.
  double harmonicity_error = 0.0;
  bool harmonicity_converged = true;
};

/// u_eps = v + u 1_{|y| >= Rbar} - w, with v a dictionary fit of u + w on B_1.
ApproxReport shadow_harmonic(const FunctionHandle& u, int m, double epsilon, const FracParams& p,
                             const QuadratureConfig& cfg, const ShadowConfig& sc = {});

/// N(m) = n + sum_{j <= m} n^j.
int derivative_pack_size(int n, int m);

/// (x, u, then every order-j partial as a full tensor in lexicographic index order, j = 1..m).
std::vector<double> derivative_pack(const FunctionHandle& u, const Point& x, int m);

/// F on R^{N(m)}.
struct Nonlinearity {
  std::string name = "zero";
  std::function<double(std::span<const double>)> eval;
  /// Declared bound on |dF/dz_i| over all of R^{N(m)}, if known.
  std::optional<double> lipschitz;
  bool identically_zero = false;
};

namespace nonlinearity {
Nonlinearity zero();
Nonlinearity constant(double c);
/// amplitude * sin(sum_i coefs[i] * z_i); the coefficients index the derivative pack.
Nonlinearity sin_composite(double amplitude, std::vector<double> coefs);
}  // namespace nonlinearity

/// max |dF/dz_i| over random points of [-S, S]^N by central differences.
double estimate_lipschitz(const Nonlinearity& F, int size, double S, std::uint64_t seed = 1, int samples = 512);

struct NonlinearReport {
  ApproxReport shadow;
  double h = 0.5;
  SolutionField v;
  FunctionHandle u_eps;
  std::vector<Point> grid;
  std::vector<double> eta;
  double eta_sup = 0.0;
  double S = 0.0;
  double lipschitz = 0.0;
  bool lipschitz_declared = false;
  /// Number of derivative-pack entries that can differ: sum_{j <= m} n^j.
  int derivative_terms = 0;
  double bound = 0.0;
  bool bound_holds = false;
};

NonlinearReport nonlinear_shadow(const FunctionHandle& u, const Nonlinearity& F, int m, double epsilon,
                                 const FracParams& p, const QuadratureConfig& cfg, const ShadowConfig& sc = {},
                                 double h = 0.5);

}  // namespace nlk
