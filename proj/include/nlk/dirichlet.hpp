// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Dirichlet problems for the fractional Laplacian on balls B_r: the
// standard problem through the explicit Green function and Poisson kernel,
// and the compensated problem for exterior data of polynomial growth.

#include <vector>

#include "nlk/chebyshev.hpp"
#include "nlk/function.hpp"
#include "nlk/multi_index.hpp"
#include "nlk/quadrature.hpp"

namespace nlk {

/// A solution together with its construction components.
struct SolutionField {
  /// The solution on all of R^n.
  FunctionHandle u;
  /// Standard-problem part; equals u inside B_r.
  FunctionHandle u_tilde;
  /// Exterior datum beyond B_{2r} (zero for standard solves).
  FunctionHandle u1;
  /// Compensated source of u1 on B_r in the params convention (zero if u1 = 0).
  FunctionHandle f_u1;
  double radius = 1.0;
};

struct DirichletSpec {
  double radius = 1.0;
  FunctionHandle source;
  FunctionHandle exterior;
};

/// f restricted to B_r and replaced by its tensor Chebyshev interpolant on
/// [-r, r]^n. f must be smooth on the cube.
FunctionHandle chebyshev_cached(const FunctionHandle& f, double r, int nodes);

/// u = r-ball solution of (-Delta)^s u = f in B_r, u = g outside:
/// u(x) = c * int_{B_r} G_r(x,y) f(y) dy + int_{B_r^c} P_r(x,y) g(y) dy, where c = c(n,s)
/// for the unnormalized operator and 1 for the normalized one.
/// Interior values with |x| > 0.95 r are returned with converged = false.
SolutionField solve_standard(double r, const FunctionHandle& f, const FunctionHandle& g, const FracParams& p,
                             const QuadratureConfig& cfg);

/// x -> -int_{|y| >= 2r} u0(y) Rem_k(x,y) dy on B_r, in the params convention.
FunctionHandle rhs_of_exterior_part(const FunctionHandle& u0, const FracParams& p, const QuadratureConfig& cfg,
                                    double r = 1.0);

/// Compensated Dirichlet problem: the exterior datum is split at |y| = 2r,
/// the far part's compensated operator is moved to the source, and the
/// remainder is a standard solve.
SolutionField solve_divergent(const DirichletSpec& spec, const FracParams& p, const QuadratureConfig& cfg);

/// u_P: (-Delta)^s u_P = P in B_1, u_P = 0 outside. Requires deg P <= k - 1.
SolutionField monomial_source_solution(const Polynomial& P, const FracParams& p, const QuadratureConfig& cfg);

/// u + u_P, a second solution of the same compensated problem.
SolutionField add_kernel_element(const SolutionField& sol, const SolutionField& u_P);

struct MultiplicityBasis {
  std::vector<MultiIndex> monomials;
  std::vector<SolutionField> fields;
  std::vector<Point> grid;
  /// Grid inner products of the fields, row-major.
  std::vector<double> gram;
  std::vector<double> singular_values;
  int rank = 0;
};

/// One u_P per monomial of degree <= k-1, their Gram matrix on a grid of
/// B_{grid_radius}, and its numerical rank (singular values above
/// 1e-8 times the largest).
MultiplicityBasis multiplicity_basis(const FracParams& p, const QuadratureConfig& cfg, int grid_size = 0,
                                     double grid_radius = 0.9);

}  // namespace nlk
