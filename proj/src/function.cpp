// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#include "nlk/function.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "nlk/error.hpp"
#include "nlk/kernels.hpp"

namespace nlk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Fourth-order central stencils for derivatives of order 0..4.
struct Stencil {
  int half;
  double w[7];
  double divisor;
};
constexpr Stencil kStencils[5] = {
    {0, {1, 0, 0, 0, 0, 0, 0}, 1.0},
    {2, {1, -8, 0, 8, -1, 0, 0}, 12.0},
    {2, {-1, 16, -30, 16, -1, 0, 0}, 12.0},
    {3, {1, -8, 13, 0, -13, 8, -1}, 8.0},
    {3, {-1, 12, -39, 56, -39, 12, -1}, 6.0},
};

double fd_recursive(const Field& f, const MultiIndex& alpha, Point y, int axis, double h) {
  if (axis == kMaxDim) return f.value(y);
  const int a = alpha.c[axis];
  if (a == 0) return fd_recursive(f, alpha, y, axis + 1, h);
  const Stencil& st = kStencils[a];
  double acc = 0.0;
  const double base = y[axis];
  for (int j = -st.half; j <= st.half; ++j) {
    const double w = st.w[j + st.half];
    if (w == 0.0) continue;
    y[axis] = base + j * h;
    acc += w * fd_recursive(f, alpha, y, axis + 1, h);
  }
  return acc / (st.divisor * std::pow(h, a));
}

std::vector<Break> sorted_unique(std::vector<Break> v) {
  std::sort(v.begin(), v.end(), [](const Break& a, const Break& b) {
    return a.radius < b.radius || (a.radius == b.radius && a.exponent < b.exponent);
  });
  v.erase(std::unique(v.begin(), v.end(), [](const Break& a, const Break& b) { return a.radius == b.radius; }),
          v.end());
  return v;
}

template <class T>
T squared_norm(const std::array<T, 3>& y) {
  return y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
}

template <class Impl>
FunctionHandle make_jet(FieldTraits traits, Impl impl) {
  return FunctionHandle(std::make_shared<JetField<Impl>>(std::move(traits), std::move(impl)));
}

FieldTraits base_traits(int n, std::string name) {
  require(n >= 1 && n <= kMaxDim, ErrorCode::kInvalidArgument, "field dimension must be 1, 2 or 3");
  FieldTraits t;
  t.dim = n;
  t.name = std::move(name);
  return t;
}

struct ConstantImpl {
  double c;
  template <class T> T eval(const std::array<T, 3>&) const { return T(c); }
};

struct MonomialImpl {
  MultiIndex alpha;
  double coef;
  template <class T> T eval(const std::array<T, 3>& y) const {
    T r = T(coef);
    for (int i = 0; i < kMaxDim; ++i)
      for (int j = 0; j < alpha.c[i]; ++j) r = r * y[i];
    return r;
  }
};

struct PolynomialImpl {
  Polynomial p;
  template <class T> T eval(const std::array<T, 3>& y) const {
    T acc = T(0.0);
    for (const auto& term : p.terms()) acc = acc + MonomialImpl{term.alpha, term.coef}.eval(y);
    return acc;
  }
};

struct BumpImpl {
  Point c;
  double w;
  double amp;
  template <class T> T eval(const std::array<T, 3>& y) const {
    using std::exp;
    T q = ((y[0] - c[0]) * (y[0] - c[0]) + (y[1] - c[1]) * (y[1] - c[1]) + (y[2] - c[2]) * (y[2] - c[2])) / (w * w);
    if (primal(q) >= 1.0) return T(0.0);
    return amp * exp(1.0 - 1.0 / (1.0 - q));
  }
};

struct GaussianImpl {
  Point c;
  double w;
  double amp;
  template <class T> T eval(const std::array<T, 3>& y) const {
    using std::exp;
    T q = (y[0] - c[0]) * (y[0] - c[0]) + (y[1] - c[1]) * (y[1] - c[1]) + (y[2] - c[2]) * (y[2] - c[2]);
    return amp * exp(q * (-0.5 / (w * w)));
  }
};

struct AnnulusImpl {
  double inner;
  double outer;
  double value;
  template <class T> T eval(const std::array<T, 3>& y) const {
    const double r2 = primal(squared_norm(y));
    return T(r2 >= inner * inner && r2 < outer * outer ? value : 0.0);
  }
};

// C-infinity transition from 0 at t <= 0 to 1 at t >= 1.
template <class T>
T smooth_step(const T& t) {
  using std::exp;
  if (primal(t) <= 0.0) return T(0.0);
  if (primal(t) >= 1.0) return T(1.0);
  T a = exp(-1.0 / t);
  T b = exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

struct PowerTailImpl {
  double g;
  double a;
  double b;
  double coef;
  template <class T> T eval(const std::array<T, 3>& y) const {
    using std::pow;
    using std::sqrt;
    T r2 = squared_norm(y);
    if (primal(r2) <= a * a) return T(0.0);
    T r = sqrt(r2);
    return coef * pow(r2, 0.5 * g) * smooth_step((r - a) / (b - a));
  }
};

struct GetoorImpl {
  double e;
  double r;
  template <class T> T eval(const std::array<T, 3>& y) const {
    using std::pow;
    T q = r * r - squared_norm(y);
    if (primal(q) <= 0.0) return T(0.0);
    return pow(q, e);
  }
};

struct SinImpl {
  double amp;
  double freq;
  double phase;
  template <class T> T eval(const std::array<T, 3>& y) const {
    using std::sin;
    return amp * sin(y[0] * freq + phase);
  }
};

struct PoissonEntryImpl {
  int n;
  double s;
  double r;
  Point pole;
  double weight;
  template <class T> T eval(const std::array<T, 3>& y) const {
    if (primal(squared_norm(y)) >= r * r) return T(0.0);
    return weight * kernels::poisson_kernel_generic(n, s, r, y, pole);
  }
};

class CombinationField final : public Field {
 public:
  CombinationField(FieldTraits t, std::vector<std::pair<double, FunctionHandle>> terms)
      : Field(std::move(t)), terms_(std::move(terms)) {}
  double value(const Point& y) const override {
    double v = 0.0;
    for (const auto& [c, f] : terms_) v += c * f(y);
    return v;
  }
  Estimate estimate(const Point& y) const override {
    Estimate e;
    for (const auto& [c, f] : terms_) e += c * f.estimate(y);
    return e;
  }
  double derivative(const MultiIndex& alpha, const Point& y) const override {
    double v = 0.0;
    for (const auto& [c, f] : terms_) v += c * f.derivative(alpha, y);
    return v;
  }

 private:
  std::vector<std::pair<double, FunctionHandle>> terms_;
};

class RestrictedField final : public Field {
 public:
  RestrictedField(FieldTraits t, FunctionHandle u, double inner, double outer)
      : Field(std::move(t)), u_(std::move(u)), inner2_(inner * inner), outer2_(outer * outer) {}
  double value(const Point& y) const override { return inside(y) ? u_(y) : 0.0; }
  Estimate estimate(const Point& y) const override { return inside(y) ? u_.estimate(y) : Estimate{}; }
  double derivative(const MultiIndex& alpha, const Point& y) const override {
    return inside(y) ? u_.derivative(alpha, y) : 0.0;
  }

 private:
  bool inside(const Point& y) const {
    const double r2 = norm2(y);
    return r2 >= inner2_ && r2 < outer2_;
  }
  FunctionHandle u_;
  double inner2_;
  double outer2_;
};

class CallableField final : public Field {
 public:
  CallableField(FieldTraits t, std::function<Estimate(const Point&)> eval)
      : Field(std::move(t)), eval_(std::move(eval)) {}
  double value(const Point& y) const override { return eval_(y).value; }
  Estimate estimate(const Point& y) const override { return eval_(y); }

 private:
  std::function<Estimate(const Point&)> eval_;
};

}  // namespace

double Field::derivative(const MultiIndex& alpha, const Point& y) const {
  if (alpha.order() == 0) return value(y);
  require(alpha.order() <= 4, ErrorCode::kUnsupportedOrder, "finite-difference derivatives stop at order 4");
  return fd_recursive(*this, alpha, y, 0, fd_step());
}

double FunctionHandle::derivative(const MultiIndex& alpha, const Point& y) const {
  require(alpha.order() <= traits().derivative_order, ErrorCode::kPrecondition,
          traits().name + ": derivative of order " + std::to_string(alpha.order()) + " not available");
  return f_->derivative(alpha, y);
}

double hessian_switch_radius(const FunctionHandle& u) {
  return (u.traits().exact_derivatives && u.traits().noise == 0.0) ? 1e-4 : 1e-2;
}

namespace fn {

FunctionHandle zero(int n) {
  auto t = base_traits(n, "zero");
  t.identically_zero = true;
  t.tail_exponent = -kInf;
  t.support_radius = 0.0;
  return make_jet(std::move(t), ConstantImpl{0.0});
}

FunctionHandle constant(int n, double c) {
  if (c == 0.0) return zero(n);
  auto t = base_traits(n, "constant");
  t.tail_exponent = 0.0;
  return make_jet(std::move(t), ConstantImpl{c});
}

FunctionHandle monomial(const MultiIndex& alpha, double coef) {
  if (coef == 0.0) return zero(alpha.n);
  auto t = base_traits(alpha.n, "monomial" + alpha.str());
  t.tail_exponent = alpha.order();
  return make_jet(std::move(t), MonomialImpl{alpha, coef});
}

FunctionHandle polynomial(const Polynomial& p) {
  if (p.degree() < 0) return zero(p.dim());
  auto t = base_traits(p.dim(), "polynomial");
  t.tail_exponent = p.degree();
  return make_jet(std::move(t), PolynomialImpl{p});
}

FunctionHandle compact_bump(int n, const Point& center, double width, double amplitude) {
  require(width > 0.0, ErrorCode::kInvalidArgument, "bump width must be positive");
  auto t = base_traits(n, "compact-bump");
  t.tail_exponent = -kInf;
  t.support_radius = norm(center) + width;
  return make_jet(std::move(t), BumpImpl{center, width, amplitude});
}

FunctionHandle gaussian(int n, const Point& center, double width, double amplitude) {
  require(width > 0.0, ErrorCode::kInvalidArgument, "gaussian width must be positive");
  auto t = base_traits(n, "gaussian");
  t.tail_exponent = -kInf;
  return make_jet(std::move(t), GaussianImpl{center, width, amplitude});
}

FunctionHandle annulus_indicator(int n, double inner, double outer, double value) {
  require(inner >= 0.0 && outer > inner, ErrorCode::kInvalidArgument, "annulus needs 0 <= inner < outer");
  auto t = base_traits(n, "annulus-indicator");
  t.tail_exponent = -kInf;
  t.support_radius = outer;
  t.vanish_radius = inner;
  if (inner > 0.0) t.breaks.push_back({inner});
  t.breaks.push_back({outer});
  return make_jet(std::move(t), AnnulusImpl{inner, outer, value});
}

FunctionHandle power_tail(int n, double g, double cutoff_inner, double cutoff_outer, double coef) {
  require(cutoff_inner > 0.0 && cutoff_outer > cutoff_inner, ErrorCode::kInvalidArgument,
          "power-tail cutoff needs 0 < inner < outer");
  auto t = base_traits(n, "power-tail");
  t.tail_exponent = g;
  t.vanish_radius = cutoff_inner;
  // The transition is smooth; the breaks only steer subdivision.
  t.breaks = {{cutoff_inner}, {cutoff_outer}};
  return make_jet(std::move(t), PowerTailImpl{g, cutoff_inner, cutoff_outer, coef});
}

FunctionHandle getoor_profile(int n, double exponent, double radius) {
  require(radius > 0.0, ErrorCode::kInvalidArgument, "getoor-profile radius must be positive");
  auto t = base_traits(n, "getoor-profile");
  t.tail_exponent = -kInf;
  t.support_radius = radius;
  t.breaks = {{radius, exponent}};
  return make_jet(std::move(t), GetoorImpl{exponent, radius});
}

FunctionHandle sin_composite(int n, double amplitude, double frequency, double phase) {
  auto t = base_traits(n, "sin-composite");
  t.tail_exponent = 0.0;
  return make_jet(std::move(t), SinImpl{amplitude, frequency, phase});
}

FunctionHandle poisson_entry(int n, double s, double r, const Point& pole, double weight) {
  require(norm(pole) > r, ErrorCode::kDomain, "poisson-entry pole must lie outside the ball");
  auto t = base_traits(n, "poisson-entry");
  t.tail_exponent = -kInf;
  t.support_radius = r;
  t.breaks = {{r, s}};
  t.atoms = {{pole, weight}};
  return make_jet(std::move(t), PoissonEntryImpl{n, s, r, pole, weight});
}

FunctionHandle linear_combination(std::vector<std::pair<double, FunctionHandle>> terms) {
  require(!terms.empty(), ErrorCode::kInvalidArgument, "linear combination needs at least one term");
  const int n = terms.front().second.dim();
  std::vector<std::pair<double, FunctionHandle>> live;
  for (auto& [c, f] : terms) {
    require(f.dim() == n, ErrorCode::kInvalidArgument, "linear combination of fields of different dimension");
    if (c != 0.0 && !f.is_zero()) live.emplace_back(c, f);
  }
  if (live.empty()) return zero(n);
  FieldTraits t = base_traits(n, "combination");
  t.tail_exponent = -kInf;
  t.support_radius = 0.0;
  t.vanish_radius = kInf;
  t.derivative_order = kMaxJetOrder;
  for (const auto& [c, f] : live) {
    const auto& ft = f.traits();
    t.tail_exponent = std::max(t.tail_exponent, ft.tail_exponent);
    t.support_radius = std::max(t.support_radius, ft.support_radius);
    t.vanish_radius = std::min(t.vanish_radius, ft.vanish_radius);
    t.breaks.insert(t.breaks.end(), ft.breaks.begin(), ft.breaks.end());
    for (const auto& a : ft.atoms) t.atoms.push_back({a.y, c * a.mass});
    t.derivative_order = std::min(t.derivative_order, ft.derivative_order);
    t.exact_derivatives = t.exact_derivatives && ft.exact_derivatives;
    t.noise += std::abs(c) * ft.noise;
  }
  t.breaks = sorted_unique(std::move(t.breaks));
  return FunctionHandle(std::make_shared<CombinationField>(std::move(t), std::move(live)));
}

FunctionHandle sum(const FunctionHandle& a, const FunctionHandle& b) { return linear_combination({{1.0, a}, {1.0, b}}); }
FunctionHandle difference(const FunctionHandle& a, const FunctionHandle& b) {
  return linear_combination({{1.0, a}, {-1.0, b}});
}
FunctionHandle scaled(const FunctionHandle& a, double c) { return linear_combination({{c, a}}); }

FunctionHandle restrict_radially(const FunctionHandle& u, double inner, double outer) {
  require(inner >= 0.0 && outer > inner, ErrorCode::kInvalidArgument, "radial restriction needs 0 <= inner < outer");
  const auto& ut = u.traits();
  if (u.is_zero() || (ut.atoms.empty() && (inner >= ut.support_radius || outer <= ut.vanish_radius)))
    return zero(u.dim());
  FieldTraits t = ut;
  t.name = ut.name + "|restricted";
  t.vanish_radius = std::max(ut.vanish_radius, inner);
  t.support_radius = std::min(ut.support_radius, outer);
  if (std::isfinite(outer)) t.tail_exponent = -kInf;
  t.breaks.clear();
  for (const Break& b : ut.breaks)
    if (b.radius > inner && b.radius < outer) t.breaks.push_back(b);
  if (inner > 0.0) t.breaks.push_back({inner});
  if (std::isfinite(outer)) t.breaks.push_back({outer});
  t.breaks = sorted_unique(std::move(t.breaks));
  t.atoms.clear();
  for (const auto& a : ut.atoms) {
    const double r = norm(a.y);
    if (r >= inner && r < outer) t.atoms.push_back(a);
  }
  return FunctionHandle(std::make_shared<RestrictedField>(std::move(t), u, inner, outer));
}

FunctionHandle from_callable(FieldTraits traits, std::function<Estimate(const Point&)> eval) {
  return FunctionHandle(std::make_shared<CallableField>(std::move(traits), std::move(eval)));
}

}  // namespace fn
}  // namespace nlk
