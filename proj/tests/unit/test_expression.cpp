#include "hardy/expression.hpp"
#include "hardy/common.hpp"
#include "hardy/scalar_field.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hardy;

TEST(Expression, ArithmeticAndPrecedence) {
  auto e = Expression::parse("1 + 2*3 - 4/2", {});
  EXPECT_DOUBLE_EQ(e.evaluate({}), 5.0);
  EXPECT_DOUBLE_EQ(Expression::parse("2^3^2", {}).evaluate({}), 512.0);
  EXPECT_DOUBLE_EQ(Expression::parse("-2^2", {}).evaluate({}), -4.0);
  EXPECT_DOUBLE_EQ(Expression::parse("(1+1)*(2+3)", {}).evaluate({}), 10.0);
}

TEST(Expression, VariablesFunctionsAndBars) {
  auto e = Expression::parse("sqrt(t) + 1/(4*t^2)", {"t"});
  const double t = 2.0;
  EXPECT_NEAR(e.evaluate(std::vector<double>{t}), std::sqrt(t) + 1.0 / 16.0, 1e-15);
  auto r = Expression::parse("1/|x|^2 + x1*x3", spatial_variables(3));
  std::vector<double> vals = {1.0, 2.0, 2.0, 3.0};
  EXPECT_NEAR(r.evaluate(vals), 1.0 / 9.0 + 2.0, 1e-15);
  EXPECT_NEAR(Expression::parse("pow(2, 0.5) * pi", {}).evaluate({}),
              std::sqrt(2.0) * std::numbers::pi, 1e-15);
}

TEST(Expression, ErrorsCarryPosition) {
  EXPECT_THROW(Expression::parse("1 + ", {}), ConfigError);
  EXPECT_THROW(Expression::parse("foo(1)", {}), ConfigError);
  EXPECT_THROW(Expression::parse("y", {"t"}), ConfigError);
  EXPECT_THROW(Expression::parse("(1", {}), ConfigError);
  try {
    Expression::parse("1 $ 2", {});
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("position"), std::string::npos);
  }
}

TEST(ScalarField, AnalyticGradientMatchesDifferences) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.5, 3.0);
  auto f = ScalarField::radial([](double r) { return 1.0 / r; },
                               [](double r) { return -1.0 / (r * r); }, Vec::Zero(3));
  for (int k = 0; k < 200; ++k) {
    Vec x(3);
    x << u(rng), u(rng), u(rng);
    const Vec ga = f.gradient(x);
    const Vec gd = central_difference_gradient([&](const Vec& y) { return f(y); }, x);
    const double h = gradient_step(x);
    EXPECT_LT((ga - gd).norm(), 10.0 * h * h + 1e-9);
  }
}
