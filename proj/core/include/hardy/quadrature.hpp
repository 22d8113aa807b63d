#pragma once

#include "hardy/common.hpp"

#include <vector>

namespace hardy {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached q-point rule; safe to call concurrently.
const GaussRule& gauss_legendre(int q);

/// q-point rule mapped to [a, b].
GaussRule gauss_legendre(int q, double a, double b);

/// Product rule on the unit sphere S^{n-1} (or its upper half x_n > 0) in
/// hyperspherical coordinates: Gauss-Legendre in each polar angle, uniform
/// trapezoid in the azimuth. Weights sum to |S^{n-1}| (resp. half of it).
struct SphereRule {
  std::vector<Vec> directions;
  std::vector<double> weights;
};

SphereRule sphere_rule(int n, int order, bool upper_half = false);

}  // namespace hardy
