#pragma once

#include "hardy/discrete.hpp"
#include "hardy/domain.hpp"
#include "hardy/green.hpp"
#include "hardy/scalar_field.hpp"
#include "hardy/sturm_liouville.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace hardy {

struct LevelRecord {
  int k = 0;
  double R = 0.0;         // truncation scale (radius, or level epsilon for null criticality)
  double h = 0.0;         // grid spacing (0 when no grid is involved)
  double value = 0.0;
  double residual = 0.0;  // eigen-residual or quadrature error estimate
};

/// Per-level data plus the decision rule that produced `verdict`. The rule is
/// a pure function of (levels, tolerances), so redecide() reproduces the
/// verdict from a stored report.
struct VerificationReport {
  std::string probe;
  std::string value_name;
  std::vector<LevelRecord> levels;
  std::map<std::string, double> fit;
  std::map<std::string, double> tolerances;
  std::string rule;
  std::string verdict;
  std::string diagnostic;

  nlohmann::json to_json() const;
  static VerificationReport from_json(const nlohmann::json& j);
};

std::string redecide(const VerificationReport& report);

// ---- Khas'minskii ----------------------------------------------------------------

struct KhasminskiiSpec {
  int K_max = 12;
  double decades_per_level = 10.0;  // R_k = 10^(decades_per_level k)
  int samples_per_level = 200;
  double tail_decades = 3.0;        // samples of the tail in [R_k, R_k 10^tail_decades]
  std::uint64_t seed = 1;
};

double khasminskii_radius(const KhasminskiiSpec& spec, int k);

/// Points of the closure of `domain` with |x - center| in [R, R 10^decades];
/// a quarter of them sit on |x - center| = R.
std::vector<Vec> tail_samples(const DomainSpec& domain, const Vec& center, double R, double decades,
                              int count, std::uint64_t seed);

/// Max of u0/u1 over samples of the complement of the k-th member, k = 1..K_max.
/// Decaying iff the maxima are strictly decreasing, drop by a factor >= 2 and
/// end at or below 1e-2.
VerificationReport khasminskii_probe(const ScalarField& u0, const ScalarField& u1,
                                     const DomainSpec& domain, const Vec& center,
                                     const KhasminskiiSpec& spec = {});

// ---- flux constancy -----------------------------------------------------------------

struct FluxReport {
  double flux1 = 0.0;
  double flux2 = 0.0;
  double relative_difference = 0.0;
};

/// Flux of -A grad G through {G = t}, on a surface star-shaped around `center`
/// parametrised over the unit sphere (upper half sphere for half domains):
/// F = ∫ rho^{n-1} |grad G|_A^2 / |grad G . theta| dtheta.
double level_set_flux(const ScalarField& G, const OperatorSpec& op, const DomainSpec& domain,
                      const Vec& center, double t, int order = 24);

/// ConfigError when the level t2 meets the support of the density.
FluxReport flux_constancy_check(const ScalarField& G, const OperatorSpec& op,
                                const DomainSpec& domain, const Density& density, double t1,
                                double t2, int order = 24);

/// Centre from which the level sets of the canonical potential are star-shaped.
Vec star_center(const DomainSpec& domain, const Density& density);

// ---- null criticality -----------------------------------------------------------------

struct NullCriticalitySpec {
  double alpha = 0.05;   // upper level; {t < alpha} must avoid supp(phi)
  int decades = 6;       // eps_j = alpha 10^-j, j = 0..decades
  int min_decades = 3;
  double slope_min = 1e-3;
  double expected_slope = std::numeric_limits<double>::quiet_NaN();  // per decade
  double slope_tol = 0.1;
};

/// I(eps) = ∫_{eps < t < alpha} v^2 W dx for radial data, reduced to
/// ω ∫ v^2 W r^{n-1} dr between the radii where t = alpha and t = eps along e_1.
VerificationReport null_criticality_radial(const ScalarField& v, const ScalarField& W,
                                           const ScalarField& t, int n,
                                           const NullCriticalitySpec& spec = {});

/// Same integral by midpoint summation over a graded tensor grid (cell widths
/// growing by `ratio` away from `center`). Half domains use the upper half only.
struct SandwichGrid {
  double h0 = 0.02;
  double ratio = 1.12;
  double extent = 0.0;  // 0: radius where t = alpha 10^-decades, doubled
};

VerificationReport null_criticality_grid(const ScalarField& v, const ScalarField& W,
                                         const ScalarField& t, const DomainSpec& domain,
                                         const Vec& center, const NullCriticalitySpec& spec = {},
                                         const SandwichGrid& grid = {});

/// I(R_j) = ω ∫_{r0}^{R_j} v^2 W r^{n-1} dr with R_j = r0 10^j, for radial data
/// without a level function (the ground state is a closed form).
VerificationReport null_criticality_shells(const std::function<double(double)>& v,
                                           const std::function<double(double)>& W, int n,
                                           double r0, const NullCriticalitySpec& spec = {});

/// Same integral by the coarea formula,
/// I(eps) = ∫_eps^alpha ds ∫_{t = s} v^2 W / |grad t| dS, with every level set
/// parametrised by rays from `center` (star-shaped level sets, as for the flux).
/// Gauss-Legendre in log s with `nodes_per_decade` nodes.
VerificationReport null_criticality_coarea(const ScalarField& v, const ScalarField& W,
                                           const ScalarField& t, const DomainSpec& domain,
                                           const Vec& center, const NullCriticalitySpec& spec = {},
                                           int order = 16, int nodes_per_decade = 8);

// ---- truncations -------------------------------------------------------------------------

/// lambda_0 of (P - lambda W) on the exhaustion members `levels`, all on one
/// grid of spacing h over `box_lo`..`box_hi` so that the discrete members are
/// nested. PASS iff every lambda_0 >= 1 - tol_below and the sequence is
/// nonincreasing.
struct TruncationSpec {
  std::vector<int> levels{1, 2, 3};
  Vec box_lo;
  Vec box_hi;
  double h = 1.0 / 16.0;
  double tol_below = 0.05;
};

VerificationReport truncation_probe(const std::function<double(const Vec&)>& W,
                                    const OperatorSpec& op, const DomainSpec& domain,
                                    const TruncationSpec& spec);

/// Discrete system of one exhaustion member on the common grid of `spec`.
DiscreteSystem truncation_system(const OperatorSpec& op, const DomainSpec& domain, int level,
                                 const TruncationSpec& spec);

// ---- optimality at infinity ------------------------------------------------------------

struct OptimalitySpec {
  double r_inner = 2.0;             // K = closed ball of this radius
  std::vector<double> outer{10.0, 100.0, 1000.0};
  int cells_per_unit_log = 400;     // coarsest level; refined twice by halving
  int refinements = 3;
  double tol_up = 0.02;
  double tol_limit = 0.05;
  bool robin_inner = false;         // Robin instead of Dirichlet at r_inner
  double gamma = 0.0;
};

/// lambda_0 of (P - lambda W) on annuli (r_inner, R), Dirichlet at R,
/// Richardson-extrapolated in h, then fitted as l_inf + C/L^2 + D/L^3 with
/// L = log(R / r_inner). PASS iff every extrapolated lambda_0 >= 1 - tol_up,
/// the sequence is nonincreasing in R and |l_inf - 1| <= tol_limit.
VerificationReport optimality_at_infinity_radial(const std::function<double(const Vec&)>& W, int n,
                                                 const OptimalitySpec& spec = {});

/// Literal reading of the optimality criterion: every lambda_0 <= 1 + tol_up
/// and the sequence increases toward 1.
bool optimality_literal_rule(const VerificationReport& report);

}  // namespace hardy
