#pragma once

#include "hardy/common.hpp"
#include "hardy/domain.hpp"
#include "hardy/operator.hpp"
#include "hardy/scalar_field.hpp"

#include <functional>
#include <string>

namespace hardy {

/// (x', -x_n)
Vec reflect(const Vec& x);

/// c_n |x - y|^{2-n}; throws DomainError at x = y and ConfigError for n < 3.
double green_free(int n, const Vec& x, const Vec& y);
Vec green_free_grad(int n, const Vec& x, const Vec& y);

/// Dirichlet Green function of the ball of the given radius (Kelvin image).
/// The image term is written as c_n D^{2-n} with
/// D^2 = |x|^2 |y|^2 / R^2 - 2 x.y + R^2, which is regular at y = 0.
double green_dirichlet_ball(int n, double radius, const Vec& x, const Vec& y);
Vec green_dirichlet_ball_grad(int n, double radius, const Vec& x, const Vec& y);

/// Two-point kernel G(x, y) with its x-gradient.
class GreenKernel {
 public:
  using EvalFn = std::function<double(const Vec&, const Vec&)>;
  using GradFn = std::function<Vec(const Vec&, const Vec&)>;

  GreenKernel(DomainSpec domain, std::string name, EvalFn eval, GradFn grad_x);

  double operator()(const Vec& x, const Vec& y) const { return eval_(x, y); }
  Vec grad_x(const Vec& x, const Vec& y) const { return grad_(x, y); }
  const DomainSpec& domain() const { return domain_; }
  const std::string& name() const { return name_; }

 private:
  DomainSpec domain_;
  std::string name_;
  EvalFn eval_;
  GradFn grad_;
};

/// Images kernel for the Neumann Laplacian: HalfBall and HalfSpace (gamma = 0)
/// and PuncturedSpace. Other pairs throw ConfigError pointing at discrete_green.
GreenKernel green_mixed(const DomainSpec& domain, const OperatorSpec& op);
double green_mixed(const DomainSpec& domain, const Vec& x, const Vec& y);

/// phi(x) = scale (1 - |x - center|^2 / radius^2)^3 on the ball, zero outside.
class Density {
 public:
  /// Scale chosen so that the integral equals `mass`.
  Density(Vec center, double radius, double mass = 1.0);

  double operator()(const Vec& x) const;
  const Vec& center() const { return center_; }
  double radius() const { return radius_; }
  double mass() const { return mass_; }
  double scale() const { return scale_; }
  bool in_support(const Vec& x) const { return (x - center_).norm() < radius_; }
  Density scaled(double factor) const { return Density(center_, radius_, mass_ * factor); }

 private:
  Vec center_;
  double radius_;
  double mass_;
  double scale_;
};

/// Canonical density per domain kind: PuncturedSpace at 0 radius 1, HalfSpace
/// at e_n radius 1/2, HalfBall at (R/2) e_n radius R/4.
Density canonical_density(const DomainSpec& domain);

struct QuadratureSpec {
  double rel_tol = 1e-8;
  int min_order = 8;
  int max_order = 96;
};

struct QuadratureEstimate {
  double value;
  double error;
  int order;
};

/// G_phi(x) = ∫ G(x, y) phi(y) dy.
class GreenPotential {
 public:
  enum class Route { Quadrature, ClosedForm };

  /// Uses the closed form whenever the kernel is an images kernel of the free
  /// Laplacian (mean-value property), quadrature otherwise.
  GreenPotential(GreenKernel kernel, Density density, QuadratureSpec spec = {});
  GreenPotential(GreenKernel kernel, Density density, QuadratureSpec spec, Route route);

  double value(const Vec& x) const;
  Vec gradient(const Vec& x) const;
  double operator()(const Vec& x) const { return value(x); }

  /// Adaptive polar quadrature; throws NumericalError if rel_tol is not reached.
  QuadratureEstimate quadrature(const Vec& x) const;
  Vec quadrature_gradient(const Vec& x) const;

  Route route() const { return route_; }
  bool closed_form_available() const { return closed_form_; }
  const GreenKernel& kernel() const { return kernel_; }
  const Density& density() const { return density_; }

  GreenPotential scaled(double factor) const;
  ScalarField field() const;

 private:
  double closed_value(const Vec& x) const;
  Vec closed_gradient(const Vec& x) const;
  double radial_potential(double r) const;
  double radial_potential_derivative(double r) const;

  GreenKernel kernel_;
  Density density_;
  QuadratureSpec spec_;
  Route route_;
  bool closed_form_ = false;
};

}  // namespace hardy
