#include "hardy/hardy.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <memory>
#include <numbers>
#include <random>

namespace hardy {

// ---- profiles ----------------------------------------------------------------

namespace {

double radicand(double t, double a) {
  if (!(t >= 0.0)) throw DomainError("f_w: t must be nonnegative, got " + std::to_string(t));
  double r = 2.0 - a * t;
  if (r < 0.0) {
    if (r > -8.0 * std::numeric_limits<double>::epsilon()) {
      r = 0.0;
    } else {
      throw DomainError("f_w: negative radicand at t = " + std::to_string(t) +
                        ", a = " + std::to_string(a));
    }
  }
  return t * r;
}

}  // namespace

double f_w(double t, double a) { return std::sqrt(radicand(t, a)); }

double f_w_prime(double t, double a) { return (1.0 - a * t) / std::sqrt(radicand(t, a)); }

double weight_w(double t, double a) {
  const double q = radicand(t, a);
  return 1.0 / (q * q);
}

namespace {

double f1_log_term(double t, double a) {
  if (!(t > 0.0)) throw DomainError("f_1: t must be positive, got " + std::to_string(t));
  if (!(a < 2.0)) throw DomainError("f_1: requires a < 2 so that s = 1 lies in (0, 2/a)");
  const double r = 2.0 - a * t;
  if (!(r > 0.0)) throw DomainError("f_1: t must be below 2/a");
  return 0.5 * std::log(r / (t * (2.0 - a)));
}

}  // namespace

double f_1(double t, double a) {
  const double I = f1_log_term(t, a);
  return f_w(t, a) * I;
}

double f_1_prime(double t, double a) {
  const double I = f1_log_term(t, a);
  const double fw = f_w(t, a);
  return f_w_prime(t, a) * I - 1.0 / fw;
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
  std::vector<double> g;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  for (std::size_t i = 0; i <= count; ++i) g.push_back(lo + static_cast<double>(i) * step);
  return g;
}

namespace {

template <class F>
double second_difference(const F& y, double t, double h) {
  return (-y(t + 2 * h) + 16.0 * y(t + h) - 30.0 * y(t) + 16.0 * y(t - h) - y(t - 2 * h)) /
         (12.0 * h * h);
}

template <class F>
double first_difference(const F& y, double t, double h) {
  return (-y(t + 2 * h) + 8.0 * y(t + h) - 8.0 * y(t - h) + y(t - 2 * h)) / (12.0 * h);
}

}  // namespace

ErmakovPinneyReport verify_ermakov_pinney(double a, const std::vector<double>& grid, double h) {
  ErmakovPinneyReport rep;
  const double upper = a > 0.0 ? 2.0 / a : std::numeric_limits<double>::infinity();
  const bool with_f1 = a < 2.0;
  auto fw = [a](double t) { return f_w(t, a); };
  auto f1 = [a](double t) { return f_1(t, a); };
  double wmin = std::numeric_limits<double>::infinity();
  double wmax = -wmin;
  double wsum = 0.0;
  for (double t : grid) {
    if (!(t - 2 * h > 0.0) || !(t + 2 * h < upper)) {
      throw ConfigError("verify_ermakov_pinney: grid point " + std::to_string(t) +
                        " too close to the ends of (0, 2/a)");
    }
    const double w = weight_w(t, a);
    rep.residual_fw = std::max(rep.residual_fw, std::abs(-second_difference(fw, t, h) - w * fw(t)));
    if (with_f1) {
      rep.residual_f1 =
          std::max(rep.residual_f1, std::abs(-second_difference(f1, t, h) - w * f1(t)));
      const double wr = fw(t) * first_difference(f1, t, h) - first_difference(fw, t, h) * f1(t);
      wmin = std::min(wmin, wr);
      wmax = std::max(wmax, wr);
      wsum += wr;
    }
    ++rep.points;
  }
  if (with_f1 && rep.points > 0) {
    rep.wronskian_mean = wsum / static_cast<double>(rep.points);
    rep.wronskian_variation = wmax - wmin;
  }
  return rep;
}

// ---- weights -------------------------------------------------------------------

namespace {

struct Profile {
  std::function<double(double)> psi;
  std::function<double(double)> dpsi;
  std::function<double(double)> w;
  std::function<double(double)> companion;  // may be empty
  std::function<double(double)> dcompanion;
};

struct WeightState {
  explicit WeightState(WeightInputs inputs) : in(std::move(inputs)) {}
  WeightInputs in;
  Profile profile;

  double t(const Vec& x) const { return in.G_phi(x) / positive_u(x); }

  double positive_u(const Vec& x) const {
    const double u = in.u(x);
    if (!(u > 0.0)) throw HypothesisError("u must be positive; got " + std::to_string(u));
    return u;
  }

  Vec grad_t(const Vec& x, double u, double t) const {
    return (in.G_phi.gradient(x) - t * in.u.gradient(x)) / u;
  }

  double W(const Vec& x) const {
    const double u = positive_u(x);
    const double tt = in.G_phi(x) / u;
    const Vec gt = grad_t(x, u, tt);
    double value = profile.w(tt) * in.op.a_norm_sq(x, gt);
    if (in.phi) {
      const double p = in.phi(x);
      if (p != 0.0) value += profile.dpsi(tt) * p / (u * profile.psi(tt));
    }
    return value;
  }
};

HardyWeightResult assemble(std::shared_ptr<const WeightState> s, HardyFamilyParams params) {
  HardyWeightResult r;
  r.params = params;
  r.t = ScalarField([s](const Vec& x) { return s->t(x); },
                    [s](const Vec& x) -> Vec {
                      const double u = s->positive_u(x);
                      return s->grad_t(x, u, s->in.G_phi(x) / u);
                    });
  r.W = ScalarField([s](const Vec& x) { return s->W(x); });
  r.v = ScalarField(
      [s](const Vec& x) {
        const double u = s->positive_u(x);
        return u * s->profile.psi(s->in.G_phi(x) / u);
      },
      [s](const Vec& x) -> Vec {
        const double u = s->positive_u(x);
        const double t = s->in.G_phi(x) / u;
        return s->profile.psi(t) * s->in.u.gradient(x) + u * s->profile.dpsi(t) * s->grad_t(x, u, t);
      });
  if (s->profile.companion) {
    r.h = ScalarField(
        [s](const Vec& x) {
          const double u = s->positive_u(x);
          return u * s->profile.companion(s->in.G_phi(x) / u);
        },
        [s](const Vec& x) -> Vec {
          const double u = s->positive_u(x);
          const double t = s->in.G_phi(x) / u;
          return s->profile.companion(t) * s->in.u.gradient(x) +
                 u * s->profile.dcompanion(t) * s->grad_t(x, u, t);
        });
  } else {
    r.h = ScalarField([](const Vec&) -> double {
      throw DomainError("companion supersolution is undefined for this family parameter");
    });
  }
  return r;
}

void check_probes(const WeightInputs& in, double* t_min, double* t_max) {
  *t_min = std::numeric_limits<double>::infinity();
  *t_max = 0.0;
  for (const Vec& x : in.probes) {
    const double u = in.u(x);
    if (!(u > 0.0)) throw HypothesisError("u is not positive at a probe point");
    const double t = in.G_phi(x) / u;
    if (!std::isfinite(t)) throw NumericalError("non-finite ratio G_phi/u at a probe point");
    *t_min = std::min(*t_min, t);
    *t_max = std::max(*t_max, t);
  }
}

}  // namespace

HardyWeightResult construct_weight(const WeightInputs& in, double a, double a_max) {
  if (!(a >= 0.0) || !(a <= a_max * (1.0 + 1e-12))) {
    throw ConfigError("family parameter a = " + std::to_string(a) + " outside [0, a_max = " +
                      std::to_string(a_max) + "]");
  }
  double t_min = 0.0, t_max = 0.0;
  check_probes(in, &t_min, &t_max);
  auto state = std::make_shared<WeightState>(in);
  state->profile.psi = [a](double t) { return f_w(t, a); };
  state->profile.dpsi = [a](double t) { return f_w_prime(t, a); };
  state->profile.w = [a](double t) { return weight_w(t, a); };
  std::vector<std::string> warnings;
  if (a < 2.0) {
    state->profile.companion = [a](double t) { return f_1(t, a); };
    state->profile.dcompanion = [a](double t) { return f_1_prime(t, a); };
  } else {
    warnings.push_back("a >= 2: the companion u f_1(t) is undefined (f_1 needs s = 1 inside (0, 2/a))");
  }
  if (a > 0.0 && a >= a_max * (1.0 - 1e-12)) {
    warnings.push_back(
        "a = a_max: the sup of G_phi/u is attained, f_w'(t) = 0 at the touching point and the "
        "weight loses its margin there");
  }
  HardyWeightResult r = assemble(state, {a, a_max > 0.0 ? 1.0 / a_max : 0.0, a_max});
  r.warnings = std::move(warnings);
  return r;
}

HardyWeightResult construct_weight_general(const WeightInputs& in, const OneDimWeight& w1d,
                                           const GeneralWeightOptions& options) {
  if (options.check_optimality) {
    const OptimalityVerdict verdict = is_optimal_1d(w1d);
    if (verdict.overall != Optimality::Optimal) {
      throw HypothesisError("1D profile is not an optimal weight for -y'' (verdict " +
                            to_string(verdict.overall) + ")");
    }
  }
  const Interval iv = w1d.interval;
  auto step = [iv](double t) {
    const double d = iv.finite() ? std::min(t - iv.lo, iv.hi - t) : t - iv.lo;
    return 1e-4 * d;
  };
  auto psi = w1d.psi;
  auto dpsi = [psi, step](double t) { return first_difference(psi, t, step(t)); };

  double t_min = 0.0, t_max = 0.0;
  check_probes(in, &t_min, &t_max);
  if (!in.probes.empty()) {
    std::vector<double> ts;
    for (const Vec& x : in.probes) ts.push_back(in.G_phi(x) / in.u(x));
    const double lo = std::max(t_min, iv.lo + 1e-12 * (1.0 + std::abs(iv.lo)));
    for (int i = 0; i <= 200; ++i) ts.push_back(lo * std::pow(t_max / lo, i / 200.0));
    double scale = 0.0;
    for (double t : ts) scale = std::max(scale, std::abs(dpsi(t)));
    for (double t : ts) {
      if (!iv.contains(t)) {
        throw HypothesisError("G_phi/u leaves the profile interval at t = " + std::to_string(t));
      }
      if (dpsi(t) < -options.derivative_tol * std::max(scale, 1.0)) {
        throw HypothesisError("psi' < 0 at t = " + std::to_string(t) +
                              " inside the range of G_phi/u");
      }
    }
  }
  auto state = std::make_shared<WeightState>(in);
  state->profile.psi = psi;
  state->profile.dpsi = dpsi;
  state->profile.w = w1d.w;
  // second solution psi(t) ∫_t^m ds / psi^2
  const double m = iv.anchor();
  auto companion = [psi, m](double t) {
    using boost::math::quadrature::gauss_kronrod;
    auto f = [&](double s) {
      const double p = psi(s);
      return 1.0 / (p * p);
    };
    return psi(t) * gauss_kronrod<double, 31>::integrate(f, t, m, 15, 1e-12);
  };
  state->profile.companion = companion;
  state->profile.dcompanion = [companion, step](double t) {
    return first_difference(companion, t, step(t));
  };
  const double S = t_max;
  return assemble(state, {0.0, S, S > 0.0 ? 1.0 / S : 0.0});
}

// ---- sup of the ratio -----------------------------------------------------------

namespace {

bool in_closure(const DomainSpec& d, const Vec& x) {
  const int n = d.dim();
  switch (d.kind()) {
    case DomainKind::HalfBall:
      return x(n - 1) >= 0.0 && x.norm() < d.radius();
    case DomainKind::HalfSpace:
      return x(n - 1) >= 0.0;
    case DomainKind::ExteriorBall:
      return x.norm() >= d.radius();
    case DomainKind::PuncturedSpace:
      return x.norm() > 0.0;
    case DomainKind::Box: {
      for (int i = 0; i < n - 1; ++i) {
        if (!(x(i) > d.lo()(i) && x(i) < d.hi()(i))) return false;
      }
      return x(n - 1) >= d.lo()(n - 1) && x(n - 1) < d.hi()(n - 1);
    }
  }
  return false;
}

}  // namespace

std::vector<Vec> sample_closure(const DomainSpec& domain, const Vec& focus, double extent,
                                int count, std::uint64_t seed) {
  const int n = domain.dim();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Vec> out;
  out.reserve(count);
  const bool plane = domain.kind() == DomainKind::HalfBall ||
                     domain.kind() == DomainKind::HalfSpace || domain.kind() == DomainKind::Box;
  const double plane_level = domain.kind() == DomainKind::Box ? domain.lo()(n - 1) : 0.0;
  long attempts = 0;
  while (static_cast<int>(out.size()) < count && attempts < 200L * count) {
    ++attempts;
    Vec x(n);
    for (int i = 0; i < n; ++i) x(i) = focus(i) + extent * u(rng);
    if (plane) {
      x(n - 1) = plane_level + std::abs(x(n - 1) - plane_level);
      if (out.size() % 10 == 0) x(n - 1) = plane_level;  // Robin points belong to the closure
    }
    if (in_closure(domain, x)) out.push_back(std::move(x));
  }
  return out;
}

SupRatio sup_ratio(const ScalarField& G_phi, const ScalarField& u, const DomainSpec& domain,
                   const Vec& focus, double focus_radius, const SamplingSpec& spec) {
  double extent = spec.extent;
  if (extent <= 0.0) {
    switch (domain.kind()) {
      case DomainKind::HalfBall:
        extent = domain.radius();
        break;
      case DomainKind::Box:
        extent = 0.5 * (domain.hi() - domain.lo()).maxCoeff();
        break;
      default:
        extent = 4.0 * (focus.norm() + focus_radius) + 2.0;
    }
  }
  std::vector<Vec> pts = sample_closure(domain, focus, extent, spec.samples, spec.seed);
  std::vector<Vec> near =
      sample_closure(domain, focus, 2.0 * focus_radius, spec.refined_samples, spec.seed + 1);
  pts.insert(pts.end(), near.begin(), near.end());
  pts.push_back(focus);
  auto ratio = [&](const Vec& x) {
    const double r = G_phi(x) / u(x);
    if (!std::isfinite(r)) throw NumericalError("non-finite ratio G_phi/u during sup search");
    return r;
  };
  std::vector<std::pair<double, std::size_t>> ranked;
  ranked.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (in_closure(domain, pts[i])) ranked.emplace_back(ratio(pts[i]), i);
  }
  const std::size_t starts = std::min<std::size_t>(spec.refine_starts, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + starts, ranked.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first; });
  SupRatio best{ranked.front().first, 0.0, pts[ranked.front().second]};
  const int n = domain.dim();
  for (std::size_t s = 0; s < starts; ++s) {
    Vec x = pts[ranked[s].second];
    double fx = ranked[s].first;
    double stepsize = 0.25 * focus_radius;
    while (stepsize > 1e-9 * focus_radius) {
      bool moved = false;
      for (int i = 0; i < n && !moved; ++i) {
        for (double sign : {1.0, -1.0}) {
          Vec y = x;
          y(i) += sign * stepsize;
          if (!in_closure(domain, y)) continue;
          const double fy = ratio(y);
          if (fy > fx) {
            x = y;
            fx = fy;
            moved = true;
            break;
          }
        }
      }
      if (!moved) stepsize *= 0.5;
    }
    if (fx > best.S) best = {fx, 0.0, x};
  }
  if (!(best.S > 0.0)) throw NumericalError("sup of G_phi/u is not positive");
  best.a_max = 1.0 / best.S;
  return best;
}

NormalizedPotential normalize_potential(const GreenPotential& gp, const ScalarField& u,
                                        const DomainSpec& domain, const SamplingSpec& spec) {
  const SupRatio raw = sup_ratio(gp.field(), u, domain, gp.density().center(),
                                 gp.density().radius(), spec);
  NormalizedPotential out{gp.scaled(0.5 / raw.S), raw.S, {0.5, 2.0, raw.argmax}};
  return out;
}

GreenPipeline canonical_pipeline(const DomainSpec& domain, const OperatorSpec& op,
                                 const SamplingSpec& spec) {
  GreenPotential gp(green_mixed(domain, op), canonical_density(domain));
  const ScalarField one = ScalarField::constant(1.0);
  NormalizedPotential norm = normalize_potential(gp, one, domain, spec);
  const Density density = norm.potential.density();
  WeightInputs in{norm.potential.field(), one, op,
                  [density](const Vec& x) { return density(x); },
                  sample_closure(domain, density.center(), 4.0 * density.radius(), 500,
                                 spec.seed + 7)};
  return {std::move(norm), std::move(in)};
}

// ---- u_xi ----------------------------------------------------------------------

namespace {

void check_uxi_args(double t, double xi, double M, double a) {
  if (!(xi > 0.0) || !(M > 0.0) || !(a > 0.0)) {
    throw ConfigError("u_xi: xi, M and a must be positive");
  }
  if (!(t > 0.0) || !(t < 2.0 / a)) {
    throw DomainError("u_xi: t = " + std::to_string(t) + " outside (0, 2/a)");
  }
}

}  // namespace

double u_xi(double t, double xi, double M, double a) {
  check_uxi_args(t, xi, M, a);
  return f_w(t, a) * std::cos(0.5 * xi * std::log(M * t / (2.0 - a * t)));
}

double u_xi_prime(double t, double xi, double M, double a) {
  check_uxi_args(t, xi, M, a);
  const double theta = 0.5 * xi * std::log(M * t / (2.0 - a * t));
  const double fw = f_w(t, a);
  return f_w_prime(t, a) * std::cos(theta) - (xi / fw) * std::sin(theta);
}

bool UXiReport::passed(double ode_tol, double oblique_tol, double zero_tol) const {
  return ode_residual <= ode_tol && oblique_residual <= oblique_tol &&
         dirichlet_residual <= zero_tol && convergence_monotone && envelope_violation <= 0.0;
}

UXiReport u_xi_checks(double xi, double M, double a, std::uint64_t seed, int samples) {
  UXiReport r{};
  r.xi = xi;
  r.M = M;
  r.a = a;
  r.t_left = 2.0 / (M * std::exp(std::numbers::pi / xi) + a);
  r.t_star = 2.0 / (M + a);
  const double upper = 2.0 / a;
  auto u = [&](double t) { return u_xi(t, xi, M, a); };

  // (1) ODE on (t_left, t_star), log-spaced interior points
  const double k = 1.0 + xi * xi;
  const int grid = 2000;
  for (int i = 1; i < grid; ++i) {
    const double t = r.t_left * std::pow(r.t_star / r.t_left, static_cast<double>(i) / grid);
    const double h = 1e-3 * std::min(t, upper - t);
    const double lhs = -second_difference(u, t, h) - k * weight_w(t, a) * u(t);
    const double scale = std::max(1.0, k * weight_w(t, a) * f_w(t, a));
    r.ode_residual = std::max(r.ode_residual, std::abs(lhs) / scale);
  }
  // (2) oblique condition at t_star
  {
    const double h = 1e-4 * std::min(r.t_star, upper - r.t_star);
    const double du = first_difference(u, r.t_star, h);
    r.oblique_residual = std::abs(du - (M * M - a * a) / (4.0 * M) * u(r.t_star));
  }
  // (3) Dirichlet zeros of u_xi and u_3xi at t_left
  r.dirichlet_residual =
      std::max(std::abs(u(r.t_left)), std::abs(u_xi(r.t_left, 3.0 * xi, M, a)));
  // (4) pointwise convergence to f_w as xi -> 0, (5) envelope
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<double> ts;
  for (int i = 0; i < samples; ++i) {
    double t = upper * dist(rng);
    if (!(t > 0.0)) t = 0.5 * upper;
    ts.push_back(t);
  }
  for (double t : ts) {
    r.envelope_violation = std::max(r.envelope_violation, std::abs(u(t)) - f_w(t, a));
  }
  double previous = std::numeric_limits<double>::infinity();
  r.convergence_monotone = true;
  for (int j = 1; j <= 3; ++j) {
    const double xj = xi * std::pow(10.0, -j);
    double err = 0.0;
    for (double t : ts) err = std::max(err, std::abs(u_xi(t, xj, M, a) - f_w(t, a)));
    r.convergence_monotone = r.convergence_monotone && err < previous;
    previous = err;
  }
  r.convergence_error = previous;
  return r;
}

}  // namespace hardy
