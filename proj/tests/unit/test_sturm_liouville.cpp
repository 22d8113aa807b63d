#include "hardy/sturm_liouville.hpp"

#include <gtest/gtest.h>

using namespace hardy;

namespace {

OneDimWeight pair(std::function<double(double)> w, std::function<double(double)> psi,
                  Interval iv = {}) {
  return {std::move(w), std::move(psi), iv};
}

OneDimWeight classical() {
  return pair([](double t) { return 1.0 / (4 * t * t); }, [](double t) { return std::sqrt(t); });
}

OneDimWeight theorem_pair(double a) {
  // factored radicand t(2 - at) avoids cancellation next to t = 2/a
  return pair([a](double t) { return std::pow(t * (2 - a * t), -2.0); },
              [a](double t) { return std::sqrt(t * (2 - a * t)); }, Interval{0.0, 2.0 / a});
}

}  // namespace

TEST(OdeResidual, ExactPairsAndNonSolutions) {
  EXPECT_LE(ode_residual(classical()).max_residual, 1e-8);
  EXPECT_LE(ode_residual(theorem_pair(1.0)).max_residual, 1e-6);
  const auto bad = pair([](double t) { return 1.0 / (4 * t * t); }, [](double t) { return t; });
  EXPECT_GT(ode_residual(bad).max_residual, 0.1);
  EXPECT_EQ(is_optimal_1d(bad).overall, Optimality::NotOptimal);
  const auto negative = pair([](double) { return 0.0; }, [](double t) { return 1.0 - t; });
  EXPECT_FALSE(ode_residual(negative).psi_positive);
  EXPECT_EQ(is_optimal_1d(negative).overall, Optimality::NotOptimal);
}

TEST(OdeResidual, FourthOrderInStep) {
  // a = 0 pair sqrt(2t): residual shrinks like h^4 until roundoff
  const auto p = theorem_pair(1e-300);
  ResidualOptions coarse{4e-2, 2};
  ResidualOptions fine{2e-2, 2};
  const auto f0 = pair([](double t) { return 1.0 / (4 * t * t); },
                       [](double t) { return std::sqrt(2 * t); }, Interval{0.1, 10.0});
  const double r1 = ode_residual(f0, coarse).max_residual;
  const double r2 = ode_residual(f0, fine).max_residual;
  EXPECT_GT(r1 / r2, 10.0);
  (void)p;
}

TEST(ClassifyDivergence, ReferenceIntegrands) {
  const double ln10 = std::log(10.0);
  auto v = classify_divergence([](double t) { return 1.0 / t; }, Side::AtZero);
  EXPECT_EQ(v.cls, DivergenceClass::Divergent);
  EXPECT_NEAR(v.growth_slope, ln10, 1e-8);
  auto h = classify_divergence([](double t) { return 1.0 / (2 * t - t * t); }, Side::AtZero,
                               Interval{0.0, 2.0});
  EXPECT_EQ(h.cls, DivergenceClass::Divergent);
  EXPECT_NEAR(h.growth_slope, ln10 / 2, 1e-6);
  auto c = classify_divergence([](double t) { return 1.0 / std::sqrt(t); }, Side::AtZero);
  EXPECT_EQ(c.cls, DivergenceClass::Convergent);
  EXPECT_NEAR(c.limit_estimate, 2.0, 1e-6);
}

TEST(ClassifyDivergence, LabeledCorpus) {
  struct Case {
    const char* name;
    std::function<double(double)> f;
    Side side;
    DivergenceClass expected;
  };
  using D = DivergenceClass;
  const std::vector<Case> corpus = {
      {"1/t at 0", [](double t) { return 1 / t; }, Side::AtZero, D::Divergent},
      {"t^-1/2 at 0", [](double t) { return 1 / std::sqrt(t); }, Side::AtZero, D::Convergent},
      {"1 at 0", [](double) { return 1.0; }, Side::AtZero, D::Convergent},
      {"t^-0.9 at 0", [](double t) { return std::pow(t, -0.9); }, Side::AtZero, D::Convergent},
      {"t^-2 at 0", [](double t) { return 1 / (t * t); }, Side::AtZero, D::Divergent},
      {"|log t|/t at 0", [](double t) { return -std::log(t) / t; }, Side::AtZero, D::Divergent},
      {"1/(t(1+|log t|)^2) at 0",
       [](double t) { return 1 / (t * std::pow(1 - std::log(t), 2)); }, Side::AtZero, D::Convergent},
      {"1/(t(1+|log t|)) at 0", [](double t) { return 1 / (t * (1 - std::log(t))); }, Side::AtZero,
       D::Divergent},
      {"1/t at inf", [](double t) { return 1 / t; }, Side::AtInfinity, D::Divergent},
      {"t^-2 at inf", [](double t) { return 1 / (t * t); }, Side::AtInfinity, D::Convergent},
      {"1/(t(1+log t)^2) at inf",
       [](double t) { return 1 / (t * std::pow(1 + std::log(t), 2)); }, Side::AtInfinity,
       D::Convergent},
      {"log t/t at inf", [](double t) { return std::log(t) / t; }, Side::AtInfinity, D::Divergent},
      {"t^-1/2 at inf", [](double t) { return 1 / std::sqrt(t); }, Side::AtInfinity, D::Divergent},
      {"exp(-t) at inf", [](double t) { return std::exp(-t); }, Side::AtInfinity, D::Convergent},
  };
  for (const auto& c : corpus) {
    EXPECT_EQ(classify_divergence(c.f, c.side).cls, c.expected) << c.name;
  }
  // slowly convergent power: allowed to be Inconclusive, never Divergent
  auto slow = classify_divergence([](double t) { return std::pow(t, -0.99); }, Side::AtZero);
  EXPECT_NE(slow.cls, DivergenceClass::Divergent);
}

TEST(ClassifyDivergence, VerdictReproducibleFromPartials) {
  auto v = classify_divergence([](double t) { return 1 / (t * (1 - std::log(t))); }, Side::AtZero);
  auto again = classify_partials(v.side, v.partials);
  EXPECT_EQ(again.cls, v.cls);
  EXPECT_DOUBLE_EQ(again.growth_slope, v.growth_slope);
}

TEST(IsOptimal1d, PaperPairs) {
  const auto c = is_optimal_1d(classical());
  EXPECT_EQ(c.overall, Optimality::Optimal);
  EXPECT_TRUE(c.ode_ok);
  EXPECT_EQ(is_optimal_1d(theorem_pair(1.0)).overall, Optimality::Optimal);
  const auto euler = is_optimal_1d(
      pair([](double t) { return 3.0 / (16 * t * t); }, [](double t) { return std::pow(t, 0.25); }));
  EXPECT_TRUE(euler.ode_ok);
  EXPECT_EQ(euler.overall, Optimality::NotOptimal);
  EXPECT_EQ(euler.cond2[0].cls, DivergenceClass::Convergent);
}

TEST(IsOptimal1d, ScaleInvariance) {
  for (double s : {1e-3, 7.0, 1e4}) {
    for (const auto& base : {classical(), theorem_pair(1.0)}) {
      auto scaled = base;
      scaled.psi = [p = base.psi, s](double t) { return s * p(t); };
      const auto a = is_optimal_1d(base);
      const auto b = is_optimal_1d(scaled);
      EXPECT_EQ(a.overall, b.overall);
      for (int i = 0; i < 2; ++i) {
        EXPECT_EQ(a.cond2[i].cls, b.cond2[i].cls);
        EXPECT_EQ(a.cond3[i].cls, b.cond3[i].cls);
      }
    }
  }
}

TEST(IsOptimal1d, InversionSymmetry) {
  const auto base = classical();
  OneDimWeight inv{[w = base.w](double t) { return std::pow(t, -4.0) * w(1 / t); },
                   [p = base.psi](double t) { return t * p(1 / t); }, {}};
  EXPECT_EQ(is_optimal_1d(inv).overall, Optimality::Optimal);
  // the theorem pair conjugated by t -> 1/t lives on (a/2, inf)
  const double a = 1.0;
  const auto tp = theorem_pair(a);
  OneDimWeight inv2{[w = tp.w](double t) { return std::pow(t, -4.0) * w(1 / t); },
                    [p = tp.psi](double t) { return t * p(1 / t); }, Interval{a / 2, INFINITY}};
  // composing with 1/t costs digits next to the finite end; coarser stencil
  OptimalityOptions opts;
  opts.residual = {1e-2, 5};
  EXPECT_EQ(is_optimal_1d(inv2, opts).overall, Optimality::Optimal);
}

TEST(IsOptimal1d, CancellingFormNearFiniteEnd) {
  // 2t - t^2 loses digits as t -> 2
  OneDimWeight p{[](double t) { return std::pow(2.0 * t - t * t, -2.0); },
                 [](double t) { return std::sqrt(2.0 * t - t * t); }, Interval{0.0, 2.0}};
  const auto v = is_optimal_1d(p);
  EXPECT_TRUE(v.ode_ok) << v.ode_residual;
  EXPECT_EQ(v.overall, Optimality::Optimal);
  const auto expr = OneDimWeight::from_expressions("(2*t - t^2)^(-2)", "sqrt(2*t - t^2)", Interval{0.0, 2.0});
  EXPECT_EQ(is_optimal_1d(expr).overall, Optimality::Optimal);
}

TEST(IsOptimal1d, ExpressionFrontEnd) {
  auto w1d = OneDimWeight::from_expressions("1/(4*t^2)", "sqrt(t)");
  EXPECT_EQ(is_optimal_1d(w1d).overall, Optimality::Optimal);
  EXPECT_THROW(OneDimWeight::from_expressions("1/(4*x^2)", "sqrt(t)"), ConfigError);
}
