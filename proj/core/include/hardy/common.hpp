#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hardy {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Bad user input: malformed config, unsupported kind/policy pair, out-of-range parameter.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of a function (negative radicand, t <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A stated hypothesis of a construction does not hold for the supplied data.
class HypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Quadrature, linear solve or eigen-iteration did not reach its tolerance.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Area of the unit sphere S^{n-1} in R^n.
inline double unit_sphere_area(int n) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

/// Newtonian constant c_n = 1/((n-2) |S^{n-1}|), n >= 3.
inline double newton_constant(int n) {
  if (n < 3) throw ConfigError("newton_constant: n >= 3 required, got " + std::to_string(n));
  return 1.0 / ((n - 2) * unit_sphere_area(n));
}

inline Vec unit_vector(int n, int axis) {
  Vec e = Vec::Zero(n);
  e(axis) = 1.0;
  return e;
}

/// Point at radius r along the first coordinate axis.
inline Vec radial_point(int n, double r) {
  Vec x = Vec::Zero(n);
  x(0) = r;
  return x;
}

}  // namespace hardy
