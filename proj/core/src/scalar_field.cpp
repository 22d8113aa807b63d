#include "hardy/scalar_field.hpp"

namespace hardy {

Vec central_difference_gradient(const std::function<double(const Vec&)>& f, const Vec& x) {
  const double h = gradient_step(x);
  Vec grad(x.size());
  Vec probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe(i) = x(i) + h;
    const double fp = f(probe);
    probe(i) = x(i) - h;
    const double fm = f(probe);
    probe(i) = x(i);
    grad(i) = (fp - fm) / (2.0 * h);
  }
  return grad;
}

ScalarField::ScalarField(ValueFn value, GradientFn gradient)
    : value_(std::move(value)), gradient_(std::move(gradient)) {}

Vec ScalarField::gradient(const Vec& x) const {
  if (gradient_) return gradient_(x);
  return central_difference_gradient(value_, x);
}

ScalarField ScalarField::constant(double c) {
  return ScalarField([c](const Vec&) { return c; },
                     [](const Vec& x) -> Vec { return Vec::Zero(x.size()); });
}

ScalarField ScalarField::radial(std::function<double(double)> f, std::function<double(double)> df,
                                Vec center) {
  return ScalarField(
      [f, center](const Vec& x) { return f((x - center).norm()); },
      [df, center](const Vec& x) -> Vec {
        const Vec d = x - center;
        const double r = d.norm();
        if (r == 0.0) return Vec::Zero(x.size());
        return (df(r) / r) * d;
      });
}

}  // namespace hardy
