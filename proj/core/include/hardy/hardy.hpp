#pragma once

#include "hardy/common.hpp"
#include "hardy/domain.hpp"
#include "hardy/green.hpp"
#include "hardy/operator.hpp"
#include "hardy/scalar_field.hpp"
#include "hardy/sturm_liouville.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace hardy {

// ---- one-dimensional profiles --------------------------------------------

/// sqrt(2t - a t^2) on [0, 2/a] (any t >= 0 when a = 0). DomainError outside.
double f_w(double t, double a);
double f_w_prime(double t, double a);
/// (2t - a t^2)^{-2}
double weight_w(double t, double a);

/// f_w(t) ∫_t^1 ds / (2s - a s^2) = f_w(t) (1/2) log((2 - a t) / (t (2 - a))).
/// Requires t > 0 and a < 2 (so that s = 1 lies inside (0, 2/a)).
double f_1(double t, double a);
double f_1_prime(double t, double a);

struct ErmakovPinneyReport {
  double residual_fw = 0.0;  // max |-y'' - w y| for y = f_w
  double residual_f1 = 0.0;  // same for y = f_1 (skipped when a >= 2)
  double wronskian_mean = 0.0;
  double wronskian_variation = 0.0;  // max - min of f_w f_1' - f_w' f_1
  std::size_t points = 0;
};

/// 4th-order finite differences with step h on every grid point; the grid
/// must lie in (0, 2/a) with a 2h margin.
ErmakovPinneyReport verify_ermakov_pinney(double a, const std::vector<double>& grid, double h);

/// Uniform grid lo, lo + step, ..., <= hi.
std::vector<double> uniform_grid(double lo, double hi, double step);

// ---- the weight ------------------------------------------------------------

struct HardyFamilyParams {
  double a = 0.0;
  double S = 0.0;      // sup of G_phi / u
  double a_max = 0.0;  // 1 / S
};

struct HardyWeightResult {
  ScalarField W;
  ScalarField v;  // ground state u f(t)
  ScalarField h;  // companion u f_1(t); throws DomainError where undefined
  ScalarField t;  // G_phi / u
  HardyFamilyParams params;
  std::vector<std::string> warnings;
};

/// Everything the weight needs besides the family parameter.
struct WeightInputs {
  ScalarField G_phi;
  ScalarField u;
  OperatorSpec op;
  /// P G_phi; empty for a pure Green kernel (the density term vanishes off the pole).
  std::function<double(const Vec&)> phi;
  /// Points where u > 0 and the range of t are checked up front.
  std::vector<Vec> probes;
};

/// W = w(t) |grad t|_A^2 + f_w'(t) phi / (u f_w(t)), t = G_phi / u, w = (2t - at^2)^{-2}.
/// Throws ConfigError for a outside [0, a_max], HypothesisError if u <= 0 at a probe.
HardyWeightResult construct_weight(const WeightInputs& in, double a, double a_max);

struct GeneralWeightOptions {
  bool check_optimality = true;  // run is_optimal_1d on the profile first
  double derivative_tol = 1e-12;
};

/// W = w(t) |grad t|_A^2 + psi'(t) phi / (u psi(t)) with ground state u psi(t),
/// for a profile (w, psi) that is optimal for -y'' and has psi' >= 0 on the range
/// of t over the probes (HypothesisError otherwise).
HardyWeightResult construct_weight_general(const WeightInputs& in, const OneDimWeight& w1d,
                                           const GeneralWeightOptions& options = {});

// ---- sup of the ratio --------------------------------------------------------

struct SamplingSpec {
  int samples = 20000;
  int refined_samples = 20000;  // inside twice the density support
  double extent = 0.0;          // half-width of the sampling box; 0 = automatic
  std::uint64_t seed = 1;
  int refine_starts = 8;
};

struct SupRatio {
  double S = 0.0;
  double a_max = 0.0;
  Vec argmax;
};

/// Sample of Ω̄ ∖ ∂Ω_Dir (Robin points included) in a box around `focus`.
std::vector<Vec> sample_closure(const DomainSpec& domain, const Vec& focus, double extent,
                                int count, std::uint64_t seed);

/// max of G_phi / u over a dense sample refined near `focus` (the density), then
/// polished by compass search. NumericalError if a ratio is not finite.
SupRatio sup_ratio(const ScalarField& G_phi, const ScalarField& u, const DomainSpec& domain,
                   const Vec& focus, double focus_radius, const SamplingSpec& spec = {});

/// Green potential rescaled so that sup G_phi / u = 1/2 (a_max = 2).
struct NormalizedPotential {
  GreenPotential potential;
  double original_sup = 0.0;
  SupRatio sup;
};

NormalizedPotential normalize_potential(const GreenPotential& gp, const ScalarField& u,
                                        const DomainSpec& domain, const SamplingSpec& spec = {});

/// The canonical pipeline inputs for a Neumann Laplacian domain: images kernel,
/// canonical density normalised to sup t = 1/2, u = 1.
struct GreenPipeline {
  NormalizedPotential normalized;
  WeightInputs inputs;
};

GreenPipeline canonical_pipeline(const DomainSpec& domain, const OperatorSpec& op,
                                 const SamplingSpec& spec = {});

// ---- oscillatory family ------------------------------------------------------

/// sqrt(2t - at^2) cos((xi/2) log(M t / (2 - a t))) on (0, 2/a).
double u_xi(double t, double xi, double M, double a);
double u_xi_prime(double t, double xi, double M, double a);

struct UXiReport {
  double xi, M, a;
  double t_left;   // 2 / (M e^{pi/xi} + a)
  double t_star;   // 2 / (M + a)
  double ode_residual;
  double oblique_residual;
  double dirichlet_residual;      // max(|u_xi(t_left)|, |u_3xi(t_left)|)
  double convergence_error;       // |u_xi' - f_w| for xi' = xi * 1e-3, max over samples
  bool convergence_monotone;      // error shrinks along xi, xi/10, xi/100, xi/1000
  double envelope_violation;      // max(|u_xi| - f_w, 0) over samples
  bool passed(double ode_tol = 1e-6, double oblique_tol = 1e-8, double zero_tol = 1e-12) const;
};

UXiReport u_xi_checks(double xi, double M, double a, std::uint64_t seed = 1, int samples = 1000);

}  // namespace hardy
