#include "hardy/config.hpp"
#include "hardy/domain.hpp"
#include "hardy/operator.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hardy;

namespace {

Vec random_point(std::mt19937_64& rng, int n, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Vec x(n);
  for (int i = 0; i < n; ++i) x(i) = u(rng);
  return x;
}

Vec random_direction(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Vec x(n);
  for (int i = 0; i < n; ++i) x(i) = g(rng);
  return x / x.norm();
}

}  // namespace

TEST(DomainSpec, MembershipFollowsKind) {
  Vec x(3);
  x << 0.2, 0.1, 0.3;
  EXPECT_TRUE(DomainSpec::half_ball(3).contains(x));
  EXPECT_FALSE(DomainSpec::half_ball(3).contains(-x));
  EXPECT_TRUE(DomainSpec::half_space(3).contains(x * 100));
  EXPECT_FALSE(DomainSpec::exterior_ball(3).contains(x));
  EXPECT_TRUE(DomainSpec::exterior_ball(3).contains(x * 10));
  EXPECT_FALSE(DomainSpec::punctured_space(3).contains(Vec::Zero(3)));
  EXPECT_THROW(DomainSpec::half_ball(3, -1.0), ConfigError);
  EXPECT_THROW(DomainSpec::half_space(1), ConfigError);
}

TEST(BoundaryDecomposition, CanonicalSplits) {
  const auto hb = decompose_boundary(DomainSpec::half_ball(3));
  Vec flat(3);
  flat << 0.3, 0.2, 0.0;
  Vec cap = Vec::Zero(3);
  cap(2) = 1.0;
  EXPECT_TRUE(hb.robin.contains(flat));
  EXPECT_FALSE(hb.dirichlet.contains(flat));
  EXPECT_TRUE(hb.dirichlet.contains(cap));
  EXPECT_FALSE(hb.robin.contains(cap));

  const auto eb = decompose_boundary(DomainSpec::exterior_ball(3));
  EXPECT_TRUE(eb.robin.contains(unit_vector(3, 0)));
  EXPECT_TRUE(eb.dirichlet.empty());
  Vec n = eb.robin.normal(unit_vector(3, 1));
  EXPECT_NEAR(n(1), -1.0, 1e-15);

  const auto ps = decompose_boundary(DomainSpec::punctured_space(3));
  EXPECT_TRUE(ps.robin.empty());
  EXPECT_TRUE(ps.dirichlet.empty());
  EXPECT_THROW(decompose_boundary(DomainSpec::punctured_space(3), SplitPolicy::AllRobin),
               ConfigError);
  EXPECT_THROW(decompose_boundary(DomainSpec::half_ball(3), SplitPolicy::AllRobin), ConfigError);
}

TEST(BoundaryDecomposition, PortionsPartitionBoundarySamples) {
  std::mt19937_64 rng(11);
  const auto d = DomainSpec::half_ball(3);
  const auto split = decompose_boundary(d);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 2000; ++k) {
    Vec x;
    if (k % 2 == 0) {
      x = random_direction(rng, 3);
      x(2) = std::abs(x(2));
    } else {
      x = random_direction(rng, 3) * std::sqrt(u(rng));
      x(2) = 0.0;
    }
    const int hits = int(split.robin.contains(x)) + int(split.dirichlet.contains(x));
    EXPECT_EQ(hits, 1) << x.transpose();
  }
  const auto box = DomainSpec::box(Vec::Constant(3, -0.5), Vec::Constant(3, 0.5));
  const auto bs = decompose_boundary(box);
  for (int k = 0; k < 2000; ++k) {
    Vec x = random_point(rng, 3, 0.5);
    const int face = k % 3;
    x(face) = (k % 2 == 0) ? -0.5 : 0.5;
    const int hits = int(bs.robin.contains(x)) + int(bs.dirichlet.contains(x));
    EXPECT_EQ(hits, 1) << x.transpose();
  }
}

TEST(BoundaryDecomposition, SurfaceQuadratureMeasures) {
  const auto hb = decompose_boundary(DomainSpec::half_ball(3, 2.0));
  double disc = 0.0;
  for (const auto& s : hb.robin.quadrature(12)) disc += s.weight;
  EXPECT_NEAR(disc, std::numbers::pi * 4.0, 1e-10);
  double cap = 0.0;
  for (const auto& s : hb.dirichlet.quadrature(12)) cap += s.weight;
  EXPECT_NEAR(cap, 2.0 * std::numbers::pi * 4.0, 1e-10);
  const auto eb = decompose_boundary(DomainSpec::exterior_ball(4));
  double sphere = 0.0;
  for (const auto& s : eb.robin.quadrature(12)) sphere += s.weight;
  EXPECT_NEAR(sphere, unit_sphere_area(4), 1e-10);
}

TEST(Exhaustion, MembersMatchSchedule) {
  const auto eb = exhaustion_member(DomainSpec::exterior_ball(3), 3);
  EXPECT_DOUBLE_EQ(eb.inner_radius(), 1.0);
  EXPECT_DOUBLE_EQ(eb.outer_radius(), 8.0);
  EXPECT_TRUE(eb.on_robin(unit_vector(3, 2)));
  EXPECT_FALSE(eb.on_robin(8.0 * unit_vector(3, 2)));

  const auto hs = exhaustion_member(DomainSpec::half_space(3), 2);
  EXPECT_DOUBLE_EQ(hs.outer_radius(), 4.0);
  Vec flat(3);
  flat << 1.0, 1.0, 0.0;
  EXPECT_TRUE(hs.on_robin(flat));
  EXPECT_FALSE(hs.on_robin(flat * 3.0));
  EXPECT_THROW(exhaustion_member(DomainSpec::half_space(3), 0), ConfigError);
}

TEST(Exhaustion, MembersAreNestedAndAvoidDirichlet) {
  std::mt19937_64 rng(5);
  const std::vector<DomainSpec> kinds = {
      DomainSpec::half_ball(3), DomainSpec::half_space(3), DomainSpec::exterior_ball(3),
      DomainSpec::punctured_space(3), DomainSpec::box(Vec::Constant(3, -0.5), Vec::Constant(3, 0.5))};
  for (const auto& d : kinds) {
    for (int k = 1; k < 5; ++k) {
      const auto a = exhaustion_member(d, k);
      const auto b = exhaustion_member(d, k + 1);
      const Vec lo = a.bbox_lo();
      const Vec hi = a.bbox_hi();
      std::uniform_real_distribution<double> u(0.0, 1.0);
      int inside = 0;
      for (int s = 0; s < 4000; ++s) {
        Vec x(3);
        for (int i = 0; i < 3; ++i) x(i) = lo(i) + (hi(i) - lo(i)) * u(rng);
        if (!a.contains(x)) continue;
        ++inside;
        EXPECT_TRUE(b.contains(x)) << to_string(d.kind()) << " k=" << k;
        EXPECT_TRUE(d.contains(x));
        EXPECT_GT(a.distance_to_parent_dirichlet(x), 0.0);
      }
      EXPECT_GT(inside, 0);
    }
  }
}

TEST(OperatorSpec, PresetsAndEllipticity) {
  std::mt19937_64 rng(3);
  std::vector<Vec> pts;
  std::vector<Vec> dirs;
  for (int i = 0; i < 1000; ++i) {
    pts.push_back(random_point(rng, 3, 4.0));
    dirs.push_back(random_point(rng, 3, 1.0));
  }
  const auto lap = OperatorSpec::laplacian_robin(3, 1.0);
  EXPECT_TRUE(lap.is_laplacian());
  EXPECT_NO_THROW(lap.check_invariants(pts, pts, dirs));

  CustomCoefficients k;
  k.A = {"2 + sin(x1)"};
  k.theta = 3.0;
  const auto custom = OperatorSpec::custom(3, k);
  EXPECT_FALSE(custom.is_laplacian());
  EXPECT_NO_THROW(custom.check_invariants(pts, pts, dirs));
  k.theta = 1.5;
  EXPECT_THROW(OperatorSpec::custom(3, k).check_invariants(pts, pts, dirs), ConfigError);

  CustomCoefficients drift;
  drift.b = {"1", "0", "0"};
  drift.symmetric = true;
  EXPECT_THROW(OperatorSpec::custom(3, drift).check_invariants(pts, pts, dirs), ConfigError);
}

TEST(OperatorSpec, FiniteDifferenceApplication) {
  const auto lap = OperatorSpec::laplacian_neumann(3);
  ScalarField q([](const Vec& x) { return x.squaredNorm(); });
  Vec x(3);
  x << 0.3, -0.2, 0.7;
  EXPECT_NEAR(lap.apply(q, x, 1e-2), -6.0, 1e-8);
  ScalarField newton([](const Vec& y) { return 1.0 / y.norm(); });
  EXPECT_NEAR(lap.apply(newton, x * 3, 1e-3), 0.0, 1e-5);
}

TEST(Config, ParsesPresetsAndRejectsGarbage) {
  auto cfg = parse_problem_config(nlohmann::json::parse(
      R"({"domain": {"kind": "exterior_ball", "n": 3, "radius": 1.0},
          "operator": {"preset": "laplacian_robin", "gamma": 1.0}})"));
  EXPECT_EQ(cfg.domain.kind(), DomainKind::ExteriorBall);
  EXPECT_EQ(cfg.op.constant_gamma().value(), 1.0);
  auto custom = parse_problem_config(nlohmann::json::parse(
      R"({"domain": {"kind": "half_space", "n": 3},
          "operator": {"preset": "custom", "c": "1/|x|^2", "gamma": "0"}})"));
  Vec x = Vec::Constant(3, 1.0);
  EXPECT_NEAR(custom.op.c(x), 1.0 / 3.0, 1e-15);
  EXPECT_THROW(parse_problem_config(nlohmann::json::parse(R"({"domain": {"kind": "torus"}})")),
               ConfigError);
  EXPECT_THROW(load_problem_config("/nonexistent/config.json"), ConfigError);
}
