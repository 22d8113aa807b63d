#pragma once

#include "hardy/common.hpp"

#include <array>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace hardy {

/// Open interval (lo, hi); hi may be +infinity. lo plays the role of 0 and hi
/// the role of infinity in the optimality conditions.
struct Interval {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();

  bool finite() const { return std::isfinite(hi); }
  /// Split point between the two ends: 1 on (0, inf), lo + 1 on (lo, inf),
  /// the midpoint otherwise.
  double anchor() const { return finite() ? 0.5 * (lo + hi) : lo + 1.0; }
  bool contains(double t) const { return t > lo && t < hi; }
};

/// A 1D weight w with candidate ground state psi for L = -y''.
struct OneDimWeight {
  std::function<double(double)> w;
  std::function<double(double)> psi;
  Interval interval;

  /// Parses expressions in the variable t (ConfigError on bad input).
  static OneDimWeight from_expressions(const std::string& w, const std::string& psi,
                                       Interval interval = {});
};

struct ResidualOptions {
  double h_log = 1e-3;
  int decades = 6;  // sampled toward each end
};

struct ResidualReport {
  double max_residual = 0.0;
  double worst_t = 0.0;
  bool psi_positive = true;
  std::size_t samples = 0;
};

/// max |-psi'' - w psi| / max(1, |w psi|) by 4th-order central differences on a
/// log-spaced grid toward both ends; the local step is h_log times the
/// distance to the nearer end, widened to (eps |t| / dist)^{1/6} times the
/// distance where rounding of t dominates. Toward a nonzero finite end the
/// samples stop at a distance of 1e-4 |end|.
ResidualReport ode_residual(const OneDimWeight& w1d, const ResidualOptions& options = {});

enum class Side { AtZero, AtInfinity };
enum class DivergenceClass { Divergent, Convergent, Inconclusive };

std::string to_string(Side side);
std::string to_string(DivergenceClass c);

struct DivergenceOptions {
  int decades = 12;
  int min_decades = 4;
  double slope_min = 1e-3;
  double ratio_convergent = 0.9;
  double ratio_log = 0.995;
  double rel_tol = 1e-10;
};

struct DivergenceVerdict {
  Side side = Side::AtZero;
  DivergenceClass cls = DivergenceClass::Inconclusive;
  double growth_slope = 0.0;                        // per decade, least squares on the trailing half
  std::vector<std::pair<double, double>> partials;  // (truncation point, partial integral)
  double limit_estimate = std::numeric_limits<double>::quiet_NaN();
  std::string diagnostic;
};

/// Partial integrals over decades toward the chosen end of `interval`
/// (Gauss-Kronrod in a logarithmic variable), then the decision rule of
/// classify_partials.
DivergenceVerdict classify_divergence(const std::function<double(double)>& integrand, Side side,
                                      const Interval& interval = {},
                                      const DivergenceOptions& options = {});

/// Decision rule on a partial-integral sequence, one entry per decade:
///  Convergent  - the last min_decades increment ratios are all <= ratio_convergent;
///  Divergent   - the last min_decades increments are >= slope_min (relative to
///                the first decade's increment) and their
///                ratios are all >= ratio_log or strictly increasing with the
///                last one above ratio_convergent (log and log-log growth);
///  Inconclusive otherwise.
DivergenceVerdict classify_partials(Side side, std::vector<std::pair<double, double>> partials,
                                    const DivergenceOptions& options = {});

enum class Optimality { Optimal, NotOptimal, Inconclusive };
std::string to_string(Optimality o);

struct OptimalityOptions {
  ResidualOptions residual;
  DivergenceOptions divergence;
  double ode_tol = 1e-6;
};

struct OptimalityVerdict {
  bool ode_ok = false;
  double ode_residual = 0.0;
  std::array<DivergenceVerdict, 2> cond2;  // ∫ 1/psi^2 at (zero, infinity)
  std::array<DivergenceVerdict, 2> cond3;  // ∫ psi^2 w at (zero, infinity)
  Optimality overall = Optimality::Inconclusive;
  std::string diagnostic;
};

OptimalityVerdict is_optimal_1d(const OneDimWeight& w1d, const OptimalityOptions& options = {});

/// Combination rule: Optimal iff the ODE holds and all four are Divergent; any
/// Convergent gives NotOptimal; otherwise Inconclusive.
Optimality combine_optimality(bool ode_ok, const std::array<DivergenceVerdict, 2>& cond2,
                              const std::array<DivergenceVerdict, 2>& cond3);

}  // namespace hardy
