// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlk/multi_index.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nlk/error.hpp"

namespace nlk {

Point make_point(std::span<const double> c) {
  require(c.size() <= kMaxDim, ErrorCode::kInvalidArgument, "point has more than 3 coordinates");
  Point p{};
  std::copy(c.begin(), c.end(), p.begin());
  return p;
}

std::string to_string(const Point& p, int n) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (int i = 0; i < n; ++i) os << (i ? ", " : "") << p[i];
  os << ")";
  return os.str();
}

void FracParams::validate() const {
  require(n >= 1 && n <= kMaxDim, ErrorCode::kInvalidArgument, "dimension n must be 1, 2 or 3");
  require(s > 0.0 && s < 1.0, ErrorCode::kInvalidArgument, "fractional order s must lie in (0,1)");
  require(k >= 0, ErrorCode::kInvalidArgument, "compensation order k must be non-negative");
}

MultiIndex::MultiIndex(int dim, std::array<int, kMaxDim> comps) : c(comps), n(dim) {
  require(dim >= 1 && dim <= kMaxDim, ErrorCode::kInvalidArgument, "multi-index dimension out of range");
  for (int i = 0; i < kMaxDim; ++i) {
    require(c[i] >= 0, ErrorCode::kInvalidArgument, "multi-index components must be non-negative");
    require(i < dim || c[i] == 0, ErrorCode::kInvalidArgument, "multi-index has components beyond its dimension");
  }
}

MultiIndex MultiIndex::zero(int dim) { return MultiIndex(dim, {0, 0, 0}); }

MultiIndex MultiIndex::unit(int dim, int axis) {
  std::array<int, kMaxDim> c{};
  c.at(axis) = 1;
  return MultiIndex(dim, c);
}

double MultiIndex::factorial() const {
  double f = 1.0;
  for (int v : c)
    for (int j = 2; j <= v; ++j) f *= j;
  return f;
}

double MultiIndex::power(const Point& x) const {
  double r = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < c[i]; ++j) r *= x[i];
  return r;
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
  return MultiIndex(std::max(n, o.n), {c[0] + o.c[0], c[1] + o.c[1], c[2] + o.c[2]});
}

std::string MultiIndex::str() const {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < n; ++i) os << (i ? "," : "") << c[i];
  os << ")";
  return os.str();
}

std::vector<MultiIndex> multi_indices_of_order(int n, int d) {
  require(n >= 1 && n <= kMaxDim, ErrorCode::kInvalidArgument, "dimension out of range");
  std::vector<MultiIndex> out;
  if (d < 0) return out;
  if (n == 1) {
    out.emplace_back(1, std::array<int, kMaxDim>{d, 0, 0});
  } else if (n == 2) {
    for (int a = d; a >= 0; --a) out.emplace_back(2, std::array<int, kMaxDim>{a, d - a, 0});
  } else {
    for (int a = d; a >= 0; --a)
      for (int b = d - a; b >= 0; --b) out.emplace_back(3, std::array<int, kMaxDim>{a, b, d - a - b});
  }
  return out;
}

std::vector<MultiIndex> multi_indices_up_to(int n, int d) {
  std::vector<MultiIndex> out;
  for (int j = 0; j <= d; ++j) {
    auto level = multi_indices_of_order(n, j);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::uint64_t binomial(int top, int bottom) {
  if (bottom < 0 || bottom > top) return 0;
  bottom = std::min(bottom, top - bottom);
  std::uint64_t r = 1;
  for (int i = 1; i <= bottom; ++i) r = r * static_cast<std::uint64_t>(top - bottom + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t count_Nk(int n, int k) {
  require(n >= 1, ErrorCode::kInvalidArgument, "count_Nk needs n >= 1");
  require(k >= 0, ErrorCode::kInvalidArgument, "count_Nk needs k >= 0");
  std::uint64_t total = 0;
  for (int j = 0; j <= k - 1; ++j) total += binomial(j + n - 1, n - 1);
  return total;
}

Polynomial Polynomial::monomial(const MultiIndex& alpha, double coef) {
  Polynomial p(alpha.n);
  p.add(alpha, coef);
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& t : terms_)
    if (t.coef != 0.0) d = std::max(d, t.alpha.order());
  return d;
}

void Polynomial::add(const MultiIndex& alpha, double coef) {
  require(alpha.n == n_, ErrorCode::kInvalidArgument, "polynomial term dimension mismatch");
  for (auto& t : terms_)
    if (t.alpha == alpha) {
      t.coef += coef;
      return;
    }
  terms_.push_back({alpha, coef});
}

double Polynomial::coefficient(const MultiIndex& alpha) const {
  for (const auto& t : terms_)
    if (t.alpha == alpha) return t.coef;
  return 0.0;
}

double Polynomial::operator()(const Point& x) const {
  double v = 0.0;
  for (const auto& t : terms_) v += t.coef * t.alpha.power(x);
  return v;
}

}  // namespace nlk
