#include "hardy/green.hpp"

#include "hardy/quadrature.hpp"

#include <array>
#include <limits>
#include <memory>

namespace hardy {

Vec reflect(const Vec& x) {
  Vec r = x;
  r(r.size() - 1) = -r(r.size() - 1);
  return r;
}

double green_free(int n, const Vec& x, const Vec& y) {
  const double c = newton_constant(n);
  const double d = (x - y).norm();
  if (d == 0.0) throw DomainError("green_free: singular at x = y");
  return c * std::pow(d, 2 - n);
}

Vec green_free_grad(int n, const Vec& x, const Vec& y) {
  const double c = newton_constant(n);
  const Vec diff = x - y;
  const double d = diff.norm();
  if (d == 0.0) throw DomainError("green_free: singular at x = y");
  return -c * (n - 2) * std::pow(d, -n) * diff;
}

namespace {

double image_distance(double radius, const Vec& x, const Vec& y) {
  const double r2 = radius * radius;
  const double d2 = x.squaredNorm() * y.squaredNorm() / r2 - 2.0 * x.dot(y) + r2;
  return std::sqrt(std::max(d2, 0.0));
}

}  // namespace

double green_dirichlet_ball(int n, double radius, const Vec& x, const Vec& y) {
  const double d = image_distance(radius, x, y);
  return green_free(n, x, y) - newton_constant(n) * std::pow(d, 2 - n);
}

Vec green_dirichlet_ball_grad(int n, double radius, const Vec& x, const Vec& y) {
  const double d = image_distance(radius, x, y);
  const Vec grad_d = (x * y.squaredNorm() / (radius * radius) - y) / d;
  return green_free_grad(n, x, y) + newton_constant(n) * (n - 2) * std::pow(d, 1 - n) * grad_d;
}

GreenKernel::GreenKernel(DomainSpec domain, std::string name, EvalFn eval, GradFn grad_x)
    : domain_(std::move(domain)), name_(std::move(name)), eval_(std::move(eval)),
      grad_(std::move(grad_x)) {}

GreenKernel green_mixed(const DomainSpec& domain, const OperatorSpec& op) {
  const int n = domain.dim();
  if (n < 3) throw ConfigError("green kernels are provided for n >= 3 only");
  const bool neumann = op.is_laplacian() && op.constant_gamma() == 0.0;
  switch (domain.kind()) {
    case DomainKind::PuncturedSpace:
      if (!op.is_laplacian()) break;
      return GreenKernel(
          domain, "free", [n](const Vec& x, const Vec& y) { return green_free(n, x, y); },
          [n](const Vec& x, const Vec& y) { return green_free_grad(n, x, y); });
    case DomainKind::HalfSpace:
      if (!neumann) break;
      return GreenKernel(
          domain, "half_space_images",
          [n](const Vec& x, const Vec& y) {
            return green_free(n, x, y) + green_free(n, reflect(x), y);
          },
          [n](const Vec& x, const Vec& y) -> Vec {
            return green_free_grad(n, x, y) + reflect(green_free_grad(n, reflect(x), y));
          });
    case DomainKind::HalfBall: {
      if (!neumann) break;
      const double r = domain.radius();
      return GreenKernel(
          domain, "half_ball_images",
          [n, r](const Vec& x, const Vec& y) {
            return green_dirichlet_ball(n, r, x, y) + green_dirichlet_ball(n, r, reflect(x), y);
          },
          [n, r](const Vec& x, const Vec& y) -> Vec {
            return green_dirichlet_ball_grad(n, r, x, y) +
                   reflect(green_dirichlet_ball_grad(n, r, reflect(x), y));
          });
    }
    default:
      break;
  }
  throw ConfigError("no closed-form kernel for " + to_string(domain.kind()) + " with operator '" +
                    op.preset() + "'; use discrete_green from the discrete verifier instead");
}

double green_mixed(const DomainSpec& domain, const Vec& x, const Vec& y) {
  return green_mixed(domain, OperatorSpec::laplacian_neumann(domain.dim()))(x, y);
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::array<double, 4> kBumpCoeff = {1.0, -3.0, 3.0, -1.0};

// ∫_{B_1} (1 - |x|^2)^3 dx = |S^{n-1}| * B(n/2, 4) / 2
double unit_bump_integral(int n) {
  const double a = 0.5 * n;
  const double beta = std::tgamma(a) * std::tgamma(4.0) / std::tgamma(a + 4.0);
  return unit_sphere_area(n) * 0.5 * beta;
}

}  // namespace

Density::Density(Vec center, double radius, double mass)
    : center_(std::move(center)), radius_(radius), mass_(mass) {
  if (!(radius > 0.0)) throw ConfigError("density radius must be positive");
  if (!(mass > 0.0)) throw ConfigError("density mass must be positive");
  const int n = static_cast<int>(center_.size());
  scale_ = mass / (unit_bump_integral(n) * std::pow(radius, n));
}

double Density::operator()(const Vec& x) const {
  const double q = 1.0 - (x - center_).squaredNorm() / (radius_ * radius_);
  return q > 0.0 ? scale_ * q * q * q : 0.0;
}

Density canonical_density(const DomainSpec& domain) {
  const int n = domain.dim();
  switch (domain.kind()) {
    case DomainKind::PuncturedSpace:
      return Density(Vec::Zero(n), 1.0);
    case DomainKind::HalfSpace:
      return Density(unit_vector(n, n - 1), 0.5);
    case DomainKind::HalfBall:
      return Density(0.5 * domain.radius() * unit_vector(n, n - 1), 0.25 * domain.radius());
    case DomainKind::ExteriorBall:
      return Density(3.0 * domain.radius() * unit_vector(n, 0), domain.radius());
    case DomainKind::Box: {
      Vec c = 0.5 * (domain.lo() + domain.hi());
      const double r = 0.25 * (domain.hi() - domain.lo()).minCoeff();
      return Density(c, r);
    }
  }
  throw ConfigError("no canonical density for this domain");
}

// ---------------------------------------------------------------------------

GreenPotential::GreenPotential(GreenKernel kernel, Density density, QuadratureSpec spec)
    : kernel_(std::move(kernel)), density_(std::move(density)), spec_(spec) {
  const std::string& k = kernel_.name();
  closed_form_ = k == "free" || k == "half_space_images" || k == "half_ball_images";
  route_ = closed_form_ ? Route::ClosedForm : Route::Quadrature;
}

GreenPotential::GreenPotential(GreenKernel kernel, Density density, QuadratureSpec spec,
                               Route route)
    : GreenPotential(std::move(kernel), std::move(density), spec) {
  if (route == Route::ClosedForm && !closed_form_) {
    throw ConfigError("closed-form potential requires an images kernel of the free Laplacian");
  }
  route_ = route;
}

// Free-space potential of the radial bump at distance r from its centre.
double GreenPotential::radial_potential(double r) const {
  const int n = kernel_.domain().dim();
  const double rho = density_.radius();
  const double c = newton_constant(n);
  if (r >= rho) return c * density_.mass() * std::pow(r, 2 - n);
  const double wk = unit_sphere_area(n) * density_.scale();
  double inner = 0.0;  // r^{2-n} M(r)
  double tail = 0.0;   // ∫_r^rho s phi(s) |S| ds
  for (int j = 0; j < 4; ++j) {
    const double rj = std::pow(rho, -2 * j);
    inner += kBumpCoeff[j] * rj * std::pow(r, 2 * j + 2) / (2 * j + n);
    tail += kBumpCoeff[j] * rj * (std::pow(rho, 2 * j + 2) - std::pow(r, 2 * j + 2)) / (2 * j + 2);
  }
  return c * wk * (inner + tail);
}

double GreenPotential::radial_potential_derivative(double r) const {
  const int n = kernel_.domain().dim();
  const double rho = density_.radius();
  const double omega = unit_sphere_area(n);
  if (r >= rho) return -density_.mass() / (omega * std::pow(r, n - 1));
  double m = 0.0;  // M(r) / r^{n-1} / (omega K)
  for (int j = 0; j < 4; ++j) {
    m += kBumpCoeff[j] * std::pow(rho, -2 * j) * std::pow(r, 2 * j + 1) / (2 * j + n);
  }
  return -density_.scale() * m;
}

double GreenPotential::closed_value(const Vec& x) const {
  const Vec& c = density_.center();
  const std::string& k = kernel_.name();
  if (k == "free") return radial_potential((x - c).norm());
  const Vec xr = reflect(x);
  double v = radial_potential((x - c).norm()) + radial_potential((xr - c).norm());
  if (k == "half_ball_images") {
    const int n = kernel_.domain().dim();
    const double r = kernel_.domain().radius();
    const double m = density_.mass() * newton_constant(n);
    v -= m * (std::pow(image_distance(r, x, c), 2 - n) + std::pow(image_distance(r, xr, c), 2 - n));
  }
  return v;
}

Vec GreenPotential::closed_gradient(const Vec& x) const {
  const int n = kernel_.domain().dim();
  const Vec& c = density_.center();
  auto radial_grad = [&](const Vec& z) -> Vec {
    const Vec d = z - c;
    const double r = d.norm();
    if (r == 0.0) return Vec::Zero(n);
    return (radial_potential_derivative(r) / r) * d;
  };
  const std::string& k = kernel_.name();
  if (k == "free") return radial_grad(x);
  const Vec xr = reflect(x);
  Vec g = radial_grad(x) + reflect(radial_grad(xr));
  if (k == "half_ball_images") {
    const double R = kernel_.domain().radius();
    const double m = density_.mass() * newton_constant(n) * (n - 2);
    auto image_grad = [&](const Vec& z) -> Vec {
      const double d = image_distance(R, z, c);
      return m * std::pow(d, 1 - n) * (z * c.squaredNorm() / (R * R) - c) / d;
    };
    g += image_grad(x) + reflect(image_grad(xr));
  }
  return g;
}

namespace {

// One fixed-order pass of the polar rule. The integrand receives (y, weight).
template <class F>
void polar_pass(const Vec& x, const Density& phi, int q, F&& accumulate) {
  const int n = static_cast<int>(x.size());
  const Vec& c = phi.center();
  const double rho = phi.radius();
  const SphereRule sphere = sphere_rule(n, q);
  const double dist = (x - c).norm();
  if (dist < rho) {
    // rays from x; the kernel singularity is absorbed by s^{n-1}
    const Vec xc = x - c;
    const double cc = xc.squaredNorm() - rho * rho;
    for (std::size_t a = 0; a < sphere.directions.size(); ++a) {
      const Vec& w = sphere.directions[a];
      const double b = w.dot(xc);
      const double s_max = -b + std::sqrt(b * b - cc);
      const GaussRule g = gauss_legendre(q, 0.0, s_max);
      for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const double s = g.nodes[i];
        accumulate(Vec(x + s * w), sphere.weights[a] * g.weights[i] * std::pow(s, n - 1));
      }
    }
    return;
  }
  // rays from the centre, shells graded toward the support radius when x is close
  std::vector<double> cuts = {0.0};
  const double gap = dist - rho;
  double width = 0.5 * rho;
  double edge = 0.5 * rho;
  cuts.push_back(edge);
  while (width > gap && width > 1e-6 * rho) {
    width *= 0.5;
    edge += width;
    cuts.push_back(edge);
  }
  cuts.push_back(rho);
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const GaussRule g = gauss_legendre(q, cuts[k], cuts[k + 1]);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double s = g.nodes[i];
      const double ws = g.weights[i] * std::pow(s, n - 1);
      for (std::size_t a = 0; a < sphere.directions.size(); ++a) {
        accumulate(Vec(c + s * sphere.directions[a]), sphere.weights[a] * ws);
      }
    }
  }
}

std::vector<int> order_schedule(const QuadratureSpec& spec) {
  std::vector<int> orders;
  for (int q = spec.min_order; q < spec.max_order; q *= 2) orders.push_back(q);
  orders.push_back(spec.max_order);
  return orders;
}

}  // namespace

QuadratureEstimate GreenPotential::quadrature(const Vec& x) const {
  double previous = 0.0;
  bool have_previous = false;
  double err = std::numeric_limits<double>::infinity();
  int used = 0;
  for (int q : order_schedule(spec_)) {
    double sum = 0.0;
    polar_pass(x, density_, q, [&](const Vec& y, double w) {
      const double p = density_(y);
      if (p > 0.0) sum += w * p * kernel_(x, y);
    });
    used = q;
    if (have_previous) {
      err = std::abs(sum - previous);
      if (err <= spec_.rel_tol * std::abs(sum)) return {sum, err, q};
    }
    previous = sum;
    have_previous = true;
  }
  throw NumericalError("green potential quadrature reached order " + std::to_string(used) +
                       " with relative error estimate " +
                       std::to_string(err / std::max(std::abs(previous), 1e-300)) +
                       " (requested " + std::to_string(spec_.rel_tol) + ")");
}

Vec GreenPotential::quadrature_gradient(const Vec& x) const {
  const int n = static_cast<int>(x.size());
  Vec previous = Vec::Zero(n);
  bool have_previous = false;
  for (int q : order_schedule(spec_)) {
    Vec sum = Vec::Zero(n);
    polar_pass(x, density_, q, [&](const Vec& y, double w) {
      const double p = density_(y);
      if (p > 0.0) sum += (w * p) * kernel_.grad_x(x, y);
    });
    if (have_previous && (sum - previous).norm() <= spec_.rel_tol * sum.norm()) return sum;
    previous = sum;
    have_previous = true;
  }
  throw NumericalError("green potential gradient quadrature did not reach rel_tol");
}

double GreenPotential::value(const Vec& x) const {
  return route_ == Route::ClosedForm ? closed_value(x) : quadrature(x).value;
}

Vec GreenPotential::gradient(const Vec& x) const {
  return route_ == Route::ClosedForm ? closed_gradient(x) : quadrature_gradient(x);
}

GreenPotential GreenPotential::scaled(double factor) const {
  return GreenPotential(kernel_, density_.scaled(factor), spec_, route_);
}

ScalarField GreenPotential::field() const {
  auto self = std::make_shared<const GreenPotential>(*this);
  return ScalarField([self](const Vec& x) { return self->value(x); },
                     [self](const Vec& x) { return self->gradient(x); });
}

}  // namespace hardy
