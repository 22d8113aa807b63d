#include "hardy/sturm_liouville.hpp"

#include "hardy/expression.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hardy {

OneDimWeight OneDimWeight::from_expressions(const std::string& w, const std::string& psi,
                                            Interval interval) {
  const Expression ew = Expression::parse(w, {"t"});
  const Expression ep = Expression::parse(psi, {"t"});
  if (!(interval.hi > interval.lo) || !std::isfinite(interval.lo)) {
    throw ConfigError("interval must satisfy lo < hi with finite lo");
  }
  return {[ew](double t) { return ew.evaluate(std::span<const double>(&t, 1)); },
          [ep](double t) { return ep.evaluate(std::span<const double>(&t, 1)); }, interval};
}

std::string to_string(Side side) { return side == Side::AtZero ? "at_zero" : "at_infinity"; }

std::string to_string(DivergenceClass c) {
  switch (c) {
    case DivergenceClass::Divergent:
      return "Divergent";
    case DivergenceClass::Convergent:
      return "Convergent";
    case DivergenceClass::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

std::string to_string(Optimality o) {
  switch (o) {
    case Optimality::Optimal:
      return "Optimal";
    case Optimality::NotOptimal:
      return "NotOptimal";
    case Optimality::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

namespace {

// Map sigma >= 0 to a point approaching the chosen end, with |dt/dsigma|.
constexpr double kEndResolution = 1e-4;

struct EndMap {
  Interval iv;
  Side side;

  double point(double sigma) const {
    const double m = iv.anchor();
    if (side == Side::AtZero) return iv.lo + (m - iv.lo) * std::exp(-sigma);
    if (iv.finite()) return iv.hi - (iv.hi - m) * std::exp(-sigma);
    return iv.lo + (m - iv.lo) * std::exp(sigma);
  }
  double jacobian(double sigma) const {
    const double m = iv.anchor();
    if (side == Side::AtZero) return (m - iv.lo) * std::exp(-sigma);
    if (iv.finite()) return (iv.hi - m) * std::exp(-sigma);
    return (m - iv.lo) * std::exp(sigma);
  }
};

}  // namespace

ResidualReport ode_residual(const OneDimWeight& w1d, const ResidualOptions& options) {
  ResidualReport report;
  const Interval& iv = w1d.interval;
  const double h_log = options.h_log;
  const double sigma_max = options.decades * std::log(10.0);
  for (Side side : {Side::AtZero, Side::AtInfinity}) {
    const EndMap map{iv, side};
    const double end = side == Side::AtZero ? iv.lo : iv.hi;
    // a nonzero finite end is resolved to about 4 digits at most
    const double dist_min = std::isfinite(end) ? kEndResolution * std::abs(end) : 0.0;
    for (double sigma = 0.0; sigma <= sigma_max; sigma += h_log) {
      const double t = map.point(sigma);
      const double dist = std::min(t - iv.lo, iv.finite() ? iv.hi - t : t - iv.lo);
      if (dist < dist_min) break;
      // widen the stencil where rounding of t dominates the truncation error
      const double rounding = std::numeric_limits<double>::epsilon() * std::abs(t) / dist;
      const double h = std::max(h_log, std::pow(rounding, 1.0 / 6.0)) * dist;
      const double y = w1d.psi(t);
      ++report.samples;
      if (!(y > 0.0)) {
        report.psi_positive = false;
        report.max_residual = std::numeric_limits<double>::infinity();
        report.worst_t = t;
        return report;
      }
      const double ypp = (-w1d.psi(t + 2 * h) + 16.0 * w1d.psi(t + h) - 30.0 * y +
                          16.0 * w1d.psi(t - h) - w1d.psi(t - 2 * h)) /
                         (12.0 * h * h);
      const double wy = w1d.w(t) * y;
      const double res = std::abs(-ypp - wy) / std::max(1.0, std::abs(wy));
      if (!(res <= report.max_residual)) {
        report.max_residual = res;
        report.worst_t = t;
      }
    }
  }
  return report;
}

DivergenceVerdict classify_partials(Side side, std::vector<std::pair<double, double>> partials,
                                    const DivergenceOptions& options) {
  DivergenceVerdict v;
  v.side = side;
  v.partials = std::move(partials);
  const std::size_t k = v.partials.size();
  if (k < 2) {
    v.diagnostic = "too few partial integrals";
    return v;
  }
  std::vector<double> inc(k);
  inc[0] = v.partials[0].second;
  for (std::size_t i = 1; i < k; ++i) inc[i] = v.partials[i].second - v.partials[i - 1].second;

  // least-squares slope of partial value against decade index, trailing half
  const std::size_t first = std::min(k / 2, k - 2);
  const double mean_i = 0.5 * (first + k - 1);
  double mean_p = 0.0;
  for (std::size_t i = first; i < k; ++i) mean_p += v.partials[i].second;
  mean_p /= static_cast<double>(k - first);
  double num = 0.0, den = 0.0;
  for (std::size_t i = first; i < k; ++i) {
    num += (i - mean_i) * (v.partials[i].second - mean_p);
    den += (i - mean_i) * (i - mean_i);
  }
  v.growth_slope = num / den;

  for (double d : inc) {
    if (!std::isfinite(d)) {
      v.diagnostic = "non-finite partial integral";
      return v;
    }
  }
  const std::size_t window = static_cast<std::size_t>(options.min_decades);
  if (k < window + 1) {
    v.diagnostic = "fewer decades than min_decades";
    return v;
  }
  std::vector<double> ratios;
  for (std::size_t i = k - window; i < k; ++i) {
    ratios.push_back(inc[i - 1] > 0.0 ? inc[i] / inc[i - 1] : std::numeric_limits<double>::infinity());
  }
  const bool geometric_decay = std::all_of(ratios.begin(), ratios.end(), [&](double r) {
    return r >= 0.0 && r <= options.ratio_convergent;
  });
  const bool tail_zero = std::all_of(inc.end() - window, inc.end(), [](double d) { return d == 0.0; });
  if (geometric_decay || tail_zero) {
    v.cls = DivergenceClass::Convergent;
    const double r = tail_zero ? 0.0 : ratios.back();
    v.limit_estimate = v.partials.back().second + inc.back() * r / (1.0 - r);
    return v;
  }
  // growth threshold relative to the first decade so that scaling the
  // integrand by a constant never changes the class
  const double unit = std::abs(inc[0]) > 0.0 ? std::abs(inc[0]) : 1.0;
  const bool sustained = std::all_of(inc.end() - window, inc.end(),
                                     [&](double d) { return d >= options.slope_min * unit; });
  const bool log_like = std::all_of(ratios.begin(), ratios.end(),
                                    [&](double r) { return r >= options.ratio_log; });
  bool increasing = ratios.back() > options.ratio_convergent;
  for (std::size_t i = 1; i < ratios.size(); ++i) increasing = increasing && ratios[i] > ratios[i - 1] + 1e-9;
  if (sustained && (log_like || increasing)) {
    v.cls = DivergenceClass::Divergent;
    return v;
  }
  v.diagnostic = sustained ? "sustained growth without log-like increments"
                           : "increments neither geometric nor sustained";
  return v;
}

DivergenceVerdict classify_divergence(const std::function<double(double)>& integrand, Side side,
                                      const Interval& interval, const DivergenceOptions& options) {
  using boost::math::quadrature::gauss_kronrod;
  const EndMap map{interval, side};
  const double ln10 = std::log(10.0);
  std::vector<std::pair<double, double>> partials;
  double running = 0.0;
  std::string diagnostic;
  for (int k = 1; k <= options.decades; ++k) {
    auto f = [&](double sigma) { return integrand(map.point(sigma)) * map.jacobian(sigma); };
    double err = 0.0;
    double piece = 0.0;
    try {
      piece = gauss_kronrod<double, 31>::integrate(f, (k - 1) * ln10, k * ln10, 12,
                                                   options.rel_tol, &err);
    } catch (const std::exception& e) {
      diagnostic = std::string("quadrature failure: ") + e.what();
      piece = std::numeric_limits<double>::quiet_NaN();
    }
    if (!std::isfinite(piece)) {
      DivergenceVerdict v;
      v.side = side;
      v.partials = std::move(partials);
      v.diagnostic = diagnostic.empty() ? "non-finite partial integral at decade " +
                                              std::to_string(k)
                                        : diagnostic;
      return v;
    }
    running += piece;
    partials.emplace_back(map.point(k * ln10), running);
  }
  return classify_partials(side, std::move(partials), options);
}

Optimality combine_optimality(bool ode_ok, const std::array<DivergenceVerdict, 2>& cond2,
                              const std::array<DivergenceVerdict, 2>& cond3) {
  bool all_divergent = true;
  bool any_convergent = false;
  for (const auto* arr : {&cond2, &cond3}) {
    for (const auto& v : *arr) {
      all_divergent = all_divergent && v.cls == DivergenceClass::Divergent;
      any_convergent = any_convergent || v.cls == DivergenceClass::Convergent;
    }
  }
  if (!ode_ok || any_convergent) return Optimality::NotOptimal;
  return all_divergent ? Optimality::Optimal : Optimality::Inconclusive;
}

OptimalityVerdict is_optimal_1d(const OneDimWeight& w1d, const OptimalityOptions& options) {
  OptimalityVerdict out;
  const ResidualReport res = ode_residual(w1d, options.residual);
  out.ode_residual = res.max_residual;
  out.ode_ok = res.psi_positive && res.max_residual <= options.ode_tol;
  if (!res.psi_positive) {
    out.overall = Optimality::NotOptimal;
    out.diagnostic = "psi is not positive on the grid";
    return out;
  }
  auto inv_sq = [&](double t) {
    const double p = w1d.psi(t);
    return 1.0 / (p * p);
  };
  auto weighted = [&](double t) {
    const double p = w1d.psi(t);
    return p * p * w1d.w(t);
  };
  const Side sides[2] = {Side::AtZero, Side::AtInfinity};
  for (int s = 0; s < 2; ++s) {
    out.cond2[s] = classify_divergence(inv_sq, sides[s], w1d.interval, options.divergence);
    out.cond3[s] = classify_divergence(weighted, sides[s], w1d.interval, options.divergence);
  }
  out.overall = combine_optimality(out.ode_ok, out.cond2, out.cond3);
  if (!out.ode_ok) out.diagnostic = "ODE residual above tolerance";
  return out;
}

}  // namespace hardy
