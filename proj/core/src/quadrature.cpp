#include "hardy/quadrature.hpp"

#include <map>
#include <mutex>
#include <numbers>

namespace hardy {

namespace {

GaussRule compute_gauss_legendre(int q) {
  GaussRule rule;
  rule.nodes.resize(q);
  rule.weights.resize(q);
  for (int i = 0; i < (q + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= q; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (q == 1) p0 = 1.0;
      dp = q * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= q; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = q * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[q - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[q - 1 - i] = w;
  }
  if (q == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = 2.0;
  }
  return rule;
}

SphereRule circle_rule(int order, bool upper_half) {
  SphereRule rule;
  if (upper_half) {
    const GaussRule g = gauss_legendre(order, 0.0, std::numbers::pi);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      Vec d(2);
      d << std::cos(g.nodes[i]), std::sin(g.nodes[i]);
      rule.directions.push_back(d);
      rule.weights.push_back(g.weights[i]);
    }
    return rule;
  }
  const int m = 2 * order;
  for (int i = 0; i < m; ++i) {
    const double phi = 2.0 * std::numbers::pi * (i + 0.5) / m;
    Vec d(2);
    d << std::cos(phi), std::sin(phi);
    rule.directions.push_back(d);
    rule.weights.push_back(2.0 * std::numbers::pi / m);
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int q) {
  if (q < 1) throw ConfigError("gauss_legendre: order must be positive");
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(q);
  if (it == cache.end()) it = cache.emplace(q, compute_gauss_legendre(q)).first;
  return it->second;
}

GaussRule gauss_legendre(int q, double a, double b) {
  const GaussRule& ref = gauss_legendre(q);
  GaussRule rule;
  rule.nodes.resize(ref.nodes.size());
  rule.weights.resize(ref.weights.size());
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (std::size_t i = 0; i < ref.nodes.size(); ++i) {
    rule.nodes[i] = mid + half * ref.nodes[i];
    rule.weights[i] = half * ref.weights[i];
  }
  return rule;
}

SphereRule sphere_rule(int n, int order, bool upper_half) {
  if (n < 2) throw ConfigError("sphere_rule: n >= 2 required");
  if (n == 2) return circle_rule(order, upper_half);
  const SphereRule inner = sphere_rule(n - 1, order, false);
  const GaussRule theta =
      gauss_legendre(order, 0.0, upper_half ? 0.5 * std::numbers::pi : std::numbers::pi);
  SphereRule rule;
  rule.directions.reserve(theta.nodes.size() * inner.directions.size());
  for (std::size_t i = 0; i < theta.nodes.size(); ++i) {
    const double s = std::sin(theta.nodes[i]);
    const double c = std::cos(theta.nodes[i]);
    const double wt = theta.weights[i] * std::pow(s, n - 2);
    for (std::size_t j = 0; j < inner.directions.size(); ++j) {
      Vec d(n);
      d.head(n - 1) = s * inner.directions[j];
      d(n - 1) = c;
      rule.directions.push_back(std::move(d));
      rule.weights.push_back(wt * inner.weights[j]);
    }
  }
  return rule;
}

}  // namespace hardy
