#include "hardy/green.hpp"
#include "hardy/quadrature.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hardy;

namespace {

// Outward flux of -grad_x G(., y) through the sphere of radius rho around y.
double flux_around(const GreenKernel& g, const Vec& y, double rho) {
  const int n = static_cast<int>(y.size());
  const SphereRule s = sphere_rule(n, 24);
  double total = 0.0;
  for (std::size_t i = 0; i < s.directions.size(); ++i) {
    const Vec x = y + rho * s.directions[i];
    total -= g.grad_x(x, y).dot(s.directions[i]) * s.weights[i] * std::pow(rho, n - 1);
  }
  return total;
}

Vec random_in_half_ball(std::mt19937_64& rng, int n, double radius) {
  std::uniform_real_distribution<double> u(-radius, radius);
  for (;;) {
    Vec x(n);
    for (int i = 0; i < n; ++i) x(i) = u(rng);
    x(n - 1) = std::abs(x(n - 1));
    if (x.norm() < 0.98 * radius && x(n - 1) > 1e-3) return x;
  }
}

}  // namespace

TEST(Reflect, FlipsLastCoordinate) {
  Vec x(3);
  x << 1, 2, 3;
  Vec r = reflect(x);
  EXPECT_EQ(r(2), -3.0);
  EXPECT_EQ(r(0), 1.0);
  EXPECT_EQ(reflect(Vec::Zero(3)), Vec::Zero(3));
  EXPECT_EQ(reflect(r), x);
}

TEST(GreenFree, ValuesAndFluxOracle) {
  Vec y = Vec::Zero(3);
  EXPECT_NEAR(green_free(3, unit_vector(3, 0), y), 1.0 / (4 * std::numbers::pi), 1e-15);
  EXPECT_NEAR(green_free(4, unit_vector(4, 0), Vec::Zero(4)),
              1.0 / (2.0 * 2.0 * std::numbers::pi * std::numbers::pi), 1e-15);
  for (int n : {3, 4, 5}) {
    auto g = green_mixed(DomainSpec::punctured_space(n), OperatorSpec::laplacian_neumann(n));
    EXPECT_NEAR(flux_around(g, Vec::Constant(n, 0.3), 0.1), 1.0, 1e-6) << "n=" << n;
  }
  Vec a(3), b(3);
  a << 1, 2, 3;
  b << -1, 0, 2;
  EXPECT_NEAR(green_free(3, a / 2, b / 2), 2.0 * green_free(3, a, b), 1e-15);
  EXPECT_THROW(green_free(3, a, a), DomainError);
  EXPECT_THROW(green_free(2, a.head(2), b.head(2)), ConfigError);
}

TEST(GreenDirichletBall, VanishesOnSphereAndIsSymmetric) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int k = 0; k < 100; ++k) {
    Vec x(3), y(3);
    for (int i = 0; i < 3; ++i) {
      x(i) = g(rng);
      y(i) = 0.3 * g(rng);
    }
    x /= x.norm();
    if (y.norm() >= 0.95) y *= 0.5 / y.norm();
    EXPECT_NEAR(green_dirichlet_ball(3, 1.0, x, y), 0.0, 1e-12);
    Vec z = 0.9 * x.reverse();
    EXPECT_NEAR(green_dirichlet_ball(3, 1.0, z, y), green_dirichlet_ball(3, 1.0, y, z), 1e-12);
  }
}

TEST(GreenDirichletBall, CentreSourceMatchesRadialOdeSolution) {
  // -(r^2 G')' = 0, G(1) = 0, unit flux  =>  G = (1/r - 1) / (4 pi)
  for (double r : {0.1, 0.5, 0.9}) {
    EXPECT_NEAR(green_dirichlet_ball(3, 1.0, radial_point(3, r), Vec::Zero(3)),
                (1.0 / r - 1.0) / (4.0 * std::numbers::pi), 1e-14);
  }
  auto g = green_mixed(DomainSpec::half_ball(3), OperatorSpec::laplacian_neumann(3));
  Vec y(3);
  y << 0.1, -0.2, 0.4;
  EXPECT_NEAR(flux_around(g, y, 0.05), 1.0, 1e-6);
}

TEST(GreenMixed, ImagesSatisfyBoundaryConditions) {
  std::mt19937_64 rng(2);
  const auto hb = green_mixed(DomainSpec::half_ball(3), OperatorSpec::laplacian_neumann(3));
  const auto hs = green_mixed(DomainSpec::half_space(3), OperatorSpec::laplacian_neumann(3));
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (int k = 0; k < 200; ++k) {
    const Vec y = random_in_half_ball(rng, 3, 1.0);
    Vec flat(3);
    flat << u(rng), u(rng), 0.0;
    EXPECT_NEAR(hb.grad_x(flat, y)(2), 0.0, 1e-10);
    EXPECT_NEAR(hs.grad_x(flat, y)(2), 0.0, 1e-10);
    Vec cap = random_in_half_ball(rng, 3, 1.0);
    cap /= cap.norm();
    EXPECT_NEAR(hb(cap, y), 0.0, 1e-12);
    const Vec x = random_in_half_ball(rng, 3, 1.0);
    if ((x - y).norm() > 1e-3) {
      EXPECT_GT(hb(x, y), 0.0);
      EXPECT_NEAR(hb(x, y), hb(y, x), 1e-10 * hb(x, y));
    }
  }
  Vec x = unit_vector(3, 2);
  Vec y = 2.0 * unit_vector(3, 2);
  EXPECT_NEAR(green_mixed(DomainSpec::half_space(3), x, y), 1.0 / (3.0 * std::numbers::pi), 1e-15);
  EXPECT_NEAR(flux_around(hs, y, 0.1), 1.0, 1e-6);
}

TEST(GreenMixed, UnsupportedPairsPointToDiscreteSolve) {
  try {
    green_mixed(DomainSpec::exterior_ball(3), OperatorSpec::laplacian_robin(3, 1.0));
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("discrete_green"), std::string::npos);
  }
  EXPECT_THROW(green_mixed(DomainSpec::half_space(3), OperatorSpec::laplacian_robin(3, 0.5)),
               ConfigError);
}

TEST(Density, NormalizedBump) {
  for (int n : {3, 4}) {
    Density d(Vec::Zero(n), 0.7, 2.0);
    const GaussRule g = gauss_legendre(24, 0.0, 0.7);
    double total = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      total += g.weights[i] * std::pow(g.nodes[i], n - 1) * d(radial_point(n, g.nodes[i]));
    }
    EXPECT_NEAR(total * unit_sphere_area(n), 2.0, 1e-12);
  }
}

TEST(GreenPotential, ClosedFormMatchesQuadrature) {
  std::mt19937_64 rng(4);
  for (auto domain : {DomainSpec::punctured_space(3), DomainSpec::half_space(3),
                      DomainSpec::half_ball(3), DomainSpec::half_space(4)}) {
    const int n = domain.dim();
    const auto op = OperatorSpec::laplacian_neumann(n);
    GreenPotential gp(green_mixed(domain, op), canonical_density(domain));
    ASSERT_EQ(gp.route(), GreenPotential::Route::ClosedForm);
    const Vec c = gp.density().center();
    for (double off : {0.0, 0.3, 0.7, 1.6, 3.0}) {
      Vec x = c + off * gp.density().radius() * unit_vector(n, 0);
      x(n - 1) += 0.1 * gp.density().radius();
      if (!domain.contains(x)) continue;
      const auto q = gp.quadrature(x);
      EXPECT_NEAR(gp.value(x), q.value, 1e-7 * q.value) << to_string(domain.kind()) << " " << off;
      const Vec gq = gp.quadrature_gradient(x);
      EXPECT_LT((gp.gradient(x) - gq).norm(), 1e-6 * (1.0 + gq.norm()));
    }
  }
}

TEST(GreenPotential, FarFieldMultipoleDecay) {
  const auto d = DomainSpec::punctured_space(3);
  GreenPotential gp(green_mixed(d, OperatorSpec::laplacian_neumann(3)), canonical_density(d));
  const Vec x = 100.0 * gp.density().radius() * unit_vector(3, 1);
  const double ratio = gp.value(x) / green_free(3, x, gp.density().center());
  EXPECT_NEAR(ratio, 1.0, 1e-2);
  GreenPotential quad(gp.kernel(), gp.density(), {}, GreenPotential::Route::Quadrature);
  EXPECT_NEAR(quad.value(x) / green_free(3, x, gp.density().center()), 1.0, 1e-2);
}

TEST(GreenPotential, PositiveAndSolvesPoisson) {
  std::mt19937_64 rng(9);
  const auto d = DomainSpec::half_ball(3);
  const auto op = OperatorSpec::laplacian_neumann(3);
  GreenPotential gp(green_mixed(d, op), canonical_density(d));
  for (int k = 0; k < 1000; ++k) {
    EXPECT_GT(gp.value(random_in_half_ball(rng, 3, 1.0)), 0.0);
  }
  const ScalarField f = gp.field();
  const Vec c = gp.density().center();
  for (double h : {4e-3, 2e-3}) {
    double worst = 0.0;
    for (double s : {0.0, 0.3, 0.6}) {
      const Vec x = c + s * gp.density().radius() * unit_vector(3, 0);
      worst = std::max(worst, std::abs(op.apply(f, x, h) - gp.density()(x)));
    }
    EXPECT_LT(worst, 2.0 * 40.0 * h * h * gp.density().scale());
  }
}

TEST(GreenPotential, ComparableToKernelOutsideSupport) {
  std::mt19937_64 rng(12);
  const auto d = DomainSpec::half_space(3);
  const auto kernel = green_mixed(d, OperatorSpec::laplacian_neumann(3));
  GreenPotential gp(kernel, canonical_density(d));
  const Vec x0 = gp.density().center();
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  double lo = 1e300, hi = 0.0;
  for (int k = 0; k < 2000; ++k) {
    Vec x(3);
    x << u(rng), u(rng), std::abs(u(rng));
    if ((x - x0).norm() < 2.0 * gp.density().radius()) continue;
    const double r = gp.value(x) / kernel(x, x0);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  EXPECT_GE(lo, 0.5);
  EXPECT_LE(hi, 2.0);
}
