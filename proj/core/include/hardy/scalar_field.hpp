#pragma once

#include "hardy/common.hpp"

#include <functional>
#include <optional>

namespace hardy {

/// Central-difference step used when a field carries no analytic gradient.
inline double gradient_step(const Vec& x) { return 1e-5 * (1.0 + x.norm()); }

Vec central_difference_gradient(const std::function<double(const Vec&)>& f, const Vec& x);

/// A value-plus-gradient callable on the closure of a domain.
///
/// Fields are immutable after construction and cheap to copy (they share the
/// underlying callables), so they can be evaluated concurrently.
class ScalarField {
 public:
  using ValueFn = std::function<double(const Vec&)>;
  using GradientFn = std::function<Vec(const Vec&)>;

  ScalarField() = default;
  explicit ScalarField(ValueFn value, GradientFn gradient = {});

  double operator()(const Vec& x) const { return value_(x); }
  double value(const Vec& x) const { return value_(x); }

  /// Analytic gradient when available, otherwise central differences with
  /// step gradient_step(x).
  Vec gradient(const Vec& x) const;

  bool has_analytic_gradient() const { return static_cast<bool>(gradient_); }
  bool valid() const { return static_cast<bool>(value_); }

  static ScalarField constant(double c);

  /// Radial field f(|x - center|) with derivative df/dr.
  static ScalarField radial(std::function<double(double)> f, std::function<double(double)> df,
                            Vec center);

 private:
  ValueFn value_;
  GradientFn gradient_;
};

}  // namespace hardy
