#pragma once

#include "hardy/common.hpp"
#include "hardy/scalar_field.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hardy {

/// Coefficient strings for the "custom" preset. Empty entries take the
/// Laplacian defaults (A = I, zero drifts, c = 0, beta = 1, gamma = 0).
/// A may be a single scalar expression (multiple of the identity) or n*n
/// expressions in row-major order.
struct CustomCoefficients {
  std::vector<std::string> A;
  std::vector<std::string> b_tilde;
  std::vector<std::string> b;
  std::string c;
  std::string beta;
  std::string gamma;
  double theta = 1.0;
  bool symmetric = true;
};

/// P u = -div(A grad u + u b~) + b . grad u + c u with the Robin operator
/// B u = beta (A grad u + u b~) . n + gamma u on the Robin part.
class OperatorSpec {
 public:
  using MatrixFn = std::function<Mat(const Vec&)>;
  using VectorFn = std::function<Vec(const Vec&)>;
  using ScalarFn = std::function<double(const Vec&)>;

  static OperatorSpec laplacian_neumann(int n);
  static OperatorSpec laplacian_robin(int n, double gamma, double beta = 1.0);
  static OperatorSpec custom(int n, const CustomCoefficients& coefficients);

  /// Fully general construction; `theta` is the declared ellipticity constant.
  OperatorSpec(int n, std::string preset, MatrixFn A, VectorFn b_tilde, VectorFn b, ScalarFn c,
               ScalarFn beta, ScalarFn gamma, bool symmetric, double theta);

  int dim() const { return n_; }
  const std::string& preset() const { return preset_; }
  bool symmetric() const { return symmetric_; }
  double theta() const { return theta_; }

  /// A = I, no drifts, c = 0.
  bool is_laplacian() const { return laplacian_; }
  /// Constant gamma/beta if both coefficients are constants.
  std::optional<double> constant_gamma() const { return constant_gamma_; }
  std::optional<double> constant_beta() const { return constant_beta_; }

  Mat A(const Vec& x) const { return A_(x); }
  Vec b_tilde(const Vec& x) const { return b_tilde_(x); }
  Vec b(const Vec& x) const { return b_(x); }
  double c(const Vec& x) const { return c_(x); }
  double beta(const Vec& x) const { return beta_(x); }
  double gamma(const Vec& x) const { return gamma_(x); }

  /// xi . A(x) xi
  double a_norm_sq(const Vec& x, const Vec& xi) const;

  /// Second-order conservative finite-difference application of P using only
  /// values of u on a stencil of spacing h around x.
  double apply(const ScalarField& u, const Vec& x, double h) const;

  /// B u at a Robin point with outward unit normal `normal`; uses u's gradient.
  double robin_residual(const ScalarField& u, const Vec& x, const Vec& normal) const;

  /// Throws ConfigError when ellipticity with the declared theta, beta > 0, or
  /// the symmetric flag fails at a probe point.
  void check_invariants(const std::vector<Vec>& probes, const std::vector<Vec>& robin_probes,
                        const std::vector<Vec>& directions) const;

 private:
  int n_;
  std::string preset_;
  MatrixFn A_;
  VectorFn b_tilde_;
  VectorFn b_;
  ScalarFn c_;
  ScalarFn beta_;
  ScalarFn gamma_;
  bool symmetric_;
  double theta_;
  bool laplacian_ = false;
  std::optional<double> constant_gamma_;
  std::optional<double> constant_beta_;
};

}  // namespace hardy
