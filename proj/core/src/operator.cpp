#include "hardy/operator.hpp"

#include "hardy/expression.hpp"

#include <Eigen/Eigenvalues>

namespace hardy {

namespace {

std::vector<double> point_values(const Vec& x) {
  std::vector<double> v(x.data(), x.data() + x.size());
  v.push_back(x.norm());
  return v;
}

OperatorSpec::ScalarFn compile(const std::string& text, int n, double fallback) {
  if (text.empty()) return [fallback](const Vec&) { return fallback; };
  Expression e = Expression::parse(text, spatial_variables(n));
  return [e](const Vec& x) { return e.evaluate(point_values(x)); };
}

OperatorSpec::VectorFn compile_vector(const std::vector<std::string>& texts, int n,
                                      const char* name) {
  if (texts.empty()) return [n](const Vec&) -> Vec { return Vec::Zero(n); };
  if (static_cast<int>(texts.size()) != n) {
    throw ConfigError(std::string(name) + " needs " + std::to_string(n) + " components");
  }
  std::vector<Expression> parts;
  for (const auto& t : texts) parts.push_back(Expression::parse(t, spatial_variables(n)));
  return [parts, n](const Vec& x) -> Vec {
    const std::vector<double> vals = point_values(x);
    Vec out(n);
    for (int i = 0; i < n; ++i) out(i) = parts[i].evaluate(vals);
    return out;
  };
}

std::optional<double> as_constant(const std::string& text) {
  if (text.empty()) return std::nullopt;
  try {
    Expression e = Expression::parse(text, {});
    return e.evaluate({});
  } catch (const ConfigError&) {
    return std::nullopt;
  }
}

}  // namespace

OperatorSpec::OperatorSpec(int n, std::string preset, MatrixFn A, VectorFn b_tilde, VectorFn b,
                           ScalarFn c, ScalarFn beta, ScalarFn gamma, bool symmetric, double theta)
    : n_(n),
      preset_(std::move(preset)),
      A_(std::move(A)),
      b_tilde_(std::move(b_tilde)),
      b_(std::move(b)),
      c_(std::move(c)),
      beta_(std::move(beta)),
      gamma_(std::move(gamma)),
      symmetric_(symmetric),
      theta_(theta) {
  if (n < 2) throw ConfigError("operator dimension must be >= 2");
  if (!(theta >= 1.0)) throw ConfigError("ellipticity constant theta must be >= 1");
}

OperatorSpec OperatorSpec::laplacian_neumann(int n) { return laplacian_robin(n, 0.0, 1.0); }

OperatorSpec OperatorSpec::laplacian_robin(int n, double gamma, double beta) {
  if (!(beta > 0.0)) throw ConfigError("beta must be positive on the Robin part");
  OperatorSpec op(
      n, gamma == 0.0 ? "laplacian_neumann" : "laplacian_robin",
      [n](const Vec&) -> Mat { return Mat::Identity(n, n); },
      [n](const Vec&) -> Vec { return Vec::Zero(n); }, [n](const Vec&) -> Vec { return Vec::Zero(n); },
      [](const Vec&) { return 0.0; }, [beta](const Vec&) { return beta; },
      [gamma](const Vec&) { return gamma; }, true, 1.0);
  op.laplacian_ = true;
  op.constant_gamma_ = gamma;
  op.constant_beta_ = beta;
  return op;
}

OperatorSpec OperatorSpec::custom(int n, const CustomCoefficients& k) {
  MatrixFn A;
  if (k.A.empty()) {
    A = [n](const Vec&) -> Mat { return Mat::Identity(n, n); };
  } else if (k.A.size() == 1) {
    auto s = compile(k.A[0], n, 1.0);
    A = [s, n](const Vec& x) -> Mat { return s(x) * Mat::Identity(n, n); };
  } else if (static_cast<int>(k.A.size()) == n * n) {
    std::vector<ScalarFn> entries;
    for (const auto& t : k.A) entries.push_back(compile(t, n, 0.0));
    A = [entries, n](const Vec& x) -> Mat {
      Mat m(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m(i, j) = entries[i * n + j](x);
      }
      return m;
    };
  } else {
    throw ConfigError("A must be one expression or n*n expressions");
  }
  OperatorSpec op(n, "custom", std::move(A), compile_vector(k.b_tilde, n, "b_tilde"),
                  compile_vector(k.b, n, "b"), compile(k.c, n, 0.0), compile(k.beta, n, 1.0),
                  compile(k.gamma, n, 0.0), k.symmetric, k.theta);
  op.constant_gamma_ = k.gamma.empty() ? std::optional<double>(0.0) : as_constant(k.gamma);
  op.constant_beta_ = k.beta.empty() ? std::optional<double>(1.0) : as_constant(k.beta);
  const bool identity_a = k.A.empty() || (k.A.size() == 1 && as_constant(k.A[0]) == 1.0);
  const auto c_const = k.c.empty() ? std::optional<double>(0.0) : as_constant(k.c);
  op.laplacian_ = identity_a && k.b_tilde.empty() && k.b.empty() && c_const == 0.0;
  return op;
}

double OperatorSpec::a_norm_sq(const Vec& x, const Vec& xi) const { return xi.dot(A_(x) * xi); }

double OperatorSpec::apply(const ScalarField& u, const Vec& x, double h) const {
  const int n = n_;
  double div_flux = 0.0;
  Vec y = x;
  for (int i = 0; i < n; ++i) {
    for (int side = -1; side <= 1; side += 2) {
      Vec half = x;
      half(i) += 0.5 * side * h;
      const Mat a = A_(half);
      // gradient at the half point: one-sided difference along i, central across
      Vec grad(n);
      Vec p = x;
      p(i) += side * h;
      grad(i) = side * (u(p) - u(x)) / h;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        Vec hp = half;
        Vec hm = half;
        hp(j) += h;
        hm(j) -= h;
        grad(j) = (u(hp) - u(hm)) / (2.0 * h);
      }
      div_flux += side * a.row(i).dot(grad) / h;
    }
  }
  double div_drift = 0.0;
  double drift = 0.0;
  for (int i = 0; i < n; ++i) {
    y(i) = x(i) + h;
    const double up = u(y);
    const double dp = up * b_tilde_(y)(i);
    y(i) = x(i) - h;
    const double um = u(y);
    const double dm = um * b_tilde_(y)(i);
    y(i) = x(i);
    div_drift += (dp - dm) / (2.0 * h);
    drift += b_(x)(i) * (up - um) / (2.0 * h);
  }
  return -div_flux - div_drift + drift + c_(x) * u(x);
}

double OperatorSpec::robin_residual(const ScalarField& u, const Vec& x, const Vec& normal) const {
  const double ux = u(x);
  const Vec flux = A_(x) * u.gradient(x) + ux * b_tilde_(x);
  return beta_(x) * flux.dot(normal) + gamma_(x) * ux;
}

void OperatorSpec::check_invariants(const std::vector<Vec>& probes,
                                    const std::vector<Vec>& robin_probes,
                                    const std::vector<Vec>& directions) const {
  const double lo = 1.0 / theta_;
  for (std::size_t k = 0; k < probes.size(); ++k) {
    const Vec& x = probes[k];
    const Mat a = A_(x);
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
      throw ConfigError("A is not symmetric at a probe point");
    }
    if (!directions.empty()) {
      const Vec& xi = directions[k % directions.size()];
      const double q = xi.dot(a * xi);
      const double s = xi.squaredNorm();
      if (q < lo * s * (1.0 - 1e-12) || q > theta_ * s * (1.0 + 1e-12)) {
        throw ConfigError("A violates the declared ellipticity bound theta = " +
                          std::to_string(theta_));
      }
    }
    if (symmetric_ && (b_(x) - b_tilde_(x)).cwiseAbs().maxCoeff() > 1e-12) {
      throw ConfigError("operator declared symmetric but b != b_tilde at a probe point");
    }
  }
  for (const Vec& x : robin_probes) {
    if (!(beta_(x) > 0.0)) throw ConfigError("beta must be positive on the Robin part");
  }
}

}  // namespace hardy
