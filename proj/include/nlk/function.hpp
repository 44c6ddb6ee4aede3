// Copyright 2026 The nonlocal-kit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Scalar fields on R^n with declared derivative access, growth at infinity
// and the geometric features (spheres of non-smoothness, exterior point
// masses) that quadrature has to respect.

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nlk/dual.hpp"
#include "nlk/multi_index.hpp"
#include "nlk/types.hpp"

namespace nlk {

/// A point mass `mass * delta_y`. Only meaningful outside the region where
/// operators are evaluated; it enters every integral against the field.
struct Atom {
  Point y{};
  double mass = 0.0;
};

struct FieldTraits {
  int dim = 1;
  std::string name = "field";
  /// g with |u(y)| <= C (1 + |y|^g); -infinity for compact support.
  double tail_exponent = 0.0;
  /// u vanishes outside B_support (infinity if unbounded support).
  double support_radius = std::numeric_limits<double>::infinity();
  /// u vanishes inside B_vanish.
  double vanish_radius = 0.0;
  /// Origin-centred spheres across which u is not smooth.
  std::vector<Break> breaks;
  std::vector<Atom> atoms;
  /// Derivatives are available up to this order (exact or finite-difference).
  int derivative_order = kMaxJetOrder;
  bool exact_derivatives = true;
  /// Absolute accuracy of value(); 0 for closed forms.
  double noise = 0.0;
  bool identically_zero = false;
};

class Field {
 public:
  explicit Field(FieldTraits traits) : traits_(std::move(traits)) {}
  virtual ~Field() = default;
  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  virtual double value(const Point& y) const = 0;
  /// Value with an absolute error estimate (nonzero for quadrature fields).
  virtual Estimate estimate(const Point& y) const { return {value(y), traits_.noise, true}; }
  /// d^alpha u at y. The default uses fourth-order central differences.
  virtual double derivative(const MultiIndex& alpha, const Point& y) const;

  const FieldTraits& traits() const { return traits_; }

 protected:
  /// Step of the default finite-difference derivative.
  virtual double fd_step() const { return traits_.noise > 0.0 ? 1e-2 : 1e-3; }
  FieldTraits traits_;
};

/// Shared immutable handle to a Field with value semantics.
class FunctionHandle {
 public:
  FunctionHandle() = default;
  explicit FunctionHandle(std::shared_ptr<const Field> f) : f_(std::move(f)) {}

  double operator()(const Point& y) const { return f_->value(y); }
  Estimate estimate(const Point& y) const { return f_->estimate(y); }
  double derivative(const MultiIndex& alpha, const Point& y) const;
  const FieldTraits& traits() const { return f_->traits(); }
  int dim() const { return f_->traits().dim; }
  bool is_zero() const { return f_->traits().identically_zero; }
  bool valid() const { return static_cast<bool>(f_); }
  const Field& field() const { return *f_; }

 private:
  std::shared_ptr<const Field> f_;
};

/// Radius inside which the near-field second difference is replaced by the
/// Hessian quadratic form.
double hessian_switch_radius(const FunctionHandle& u);

namespace fn {

FunctionHandle zero(int n);
FunctionHandle constant(int n, double c);
/// coef * y^alpha
FunctionHandle monomial(const MultiIndex& alpha, double coef = 1.0);
FunctionHandle polynomial(const Polynomial& p);
/// amplitude * exp(1 - 1/(1 - |y-c|^2/w^2)) inside B_w(c), zero outside (C-infinity).
FunctionHandle compact_bump(int n, const Point& center, double width, double amplitude);
/// amplitude * exp(-|y-c|^2 / (2 w^2)).
FunctionHandle gaussian(int n, const Point& center, double width, double amplitude);
/// value on inner <= |y| < outer, zero elsewhere.
FunctionHandle annulus_indicator(int n, double inner, double outer, double value = 1.0);
/// coef * |y|^g * step(|y|), step a C-infinity transition from 0 on B_a to 1 outside B_b.
FunctionHandle power_tail(int n, double g, double cutoff_inner, double cutoff_outer, double coef = 1.0);
/// (r^2 - |y|^2)_+^e
FunctionHandle getoor_profile(int n, double exponent, double radius = 1.0);
/// amplitude * sin(frequency * y_1 + phase)
FunctionHandle sin_composite(int n, double amplitude, double frequency, double phase = 0.0);
/// P_r(., pole) inside B_r, zero outside B_r except a unit atom at the pole.
FunctionHandle poisson_entry(int n, double s, double r, const Point& pole, double weight = 1.0);

/// sum_i coefs[i] * terms[i]
FunctionHandle linear_combination(std::vector<std::pair<double, FunctionHandle>> terms);
FunctionHandle sum(const FunctionHandle& a, const FunctionHandle& b);
FunctionHandle difference(const FunctionHandle& a, const FunctionHandle& b);
FunctionHandle scaled(const FunctionHandle& a, double c);
/// u * 1{inner <= |y| < outer}; atoms are filtered by the same rule.
FunctionHandle restrict_radially(const FunctionHandle& u, double inner, double outer);
/// Wraps a callable. Derivatives fall back to finite differences.
FunctionHandle from_callable(FieldTraits traits, std::function<Estimate(const Point&)> eval);

}  // namespace fn

/// Helper for closed-form fields written once over a generic scalar type.
/// `Impl` provides `template <class T> T eval(const std::array<T,3>&) const`.
template <class Impl>
class JetField : public Field {
 public:
  JetField(FieldTraits traits, Impl impl) : Field(std::move(traits)), impl_(std::move(impl)) {}
  double value(const Point& y) const override { return impl_.eval(y); }
  double derivative(const MultiIndex& alpha, const Point& y) const override {
    if (alpha.order() == 0) return value(y);
    return jet_derivative([this](const auto& v) { return impl_.eval(v); }, alpha, y);
  }

 private:
  Impl impl_;
};

}  // namespace nlk
