// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "nlk/types.hpp"

namespace nlk {

/// Exponent vector of a monomial in n variables.
struct MultiIndex {
  std::array<int, kMaxDim> c{};
  int n = 1;

  MultiIndex() = default;
  MultiIndex(int dim, std::array<int, kMaxDim> comps);
  static MultiIndex zero(int dim);
  static MultiIndex unit(int dim, int axis);

  int order() const { return c[0] + c[1] + c[2]; }
  /// alpha! = prod alpha_i!
  double factorial() const;
  /// x^alpha
  double power(const Point& x) const;
  MultiIndex operator+(const MultiIndex& o) const;
  bool operator==(const MultiIndex& o) const = default;
  std::string str() const;
};

/// All multi-indices of order exactly d, graded-lexicographic (x_1 first).
std::vector<MultiIndex> multi_indices_of_order(int n, int d);
/// All multi-indices of order at most d, graded-lexicographic.
std::vector<MultiIndex> multi_indices_up_to(int n, int d);

std::uint64_t binomial(int top, int bottom);

/// N_k = sum_{j=0}^{k-1} binom(j+n-1, n-1): dimension of polynomials of
/// degree at most k-1 in n variables.
std::uint64_t count_Nk(int n, int k);

/// A multivariate polynomial in the monomial basis.
class Polynomial {
 public:
  struct Term {
    MultiIndex alpha;
    double coef = 0.0;
  };

  explicit Polynomial(int n = 1) : n_(n) {}
  static Polynomial monomial(const MultiIndex& alpha, double coef = 1.0);

  int dim() const { return n_; }
  /// Highest order carrying a nonzero coefficient; -1 for the zero polynomial.
  int degree() const;
  const std::vector<Term>& terms() const { return terms_; }

  void add(const MultiIndex& alpha, double coef);
  double coefficient(const MultiIndex& alpha) const;
  double operator()(const Point& x) const;

 private:
  int n_;
  std::vector<Term> terms_;
};

}  // namespace nlk
