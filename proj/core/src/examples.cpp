#include "hardy/examples.hpp"

#include "hardy/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <random>

namespace hardy {

ExampleCheck check_le(std::string name, double value, double limit) {
  return {std::move(name), value, limit, "<=", value <= limit};
}

ExampleCheck check_ge(std::string name, double value, double limit) {
  return {std::move(name), value, limit, ">=", value >= limit};
}

std::string ExampleResult::status() const {
  bool fail = false, inconclusive = false;
  for (const auto& c : checks) fail = fail || !c.pass;
  for (const auto& r : reports) {
    if (r.report.verdict == r.expected) continue;
    if (r.report.verdict == "Inconclusive") {
      inconclusive = true;
    } else {
      fail = true;
    }
  }
  if (fail) return "FAIL";
  return inconclusive ? "Inconclusive" : "PASS";
}

nlohmann::json ExampleResult::to_json() const {
  nlohmann::json j;
  j["schema"] = "hardy-forge/1";
  j["example"] = id;
  j["parameters"] = parameters;
  j["weight_route"] = weight_route;
  j["fields"] = fields;
  nlohmann::json checks_json = nlohmann::json::array();
  for (const auto& c : checks) {
    checks_json.push_back(
        {{"name", c.name}, {"value", c.value}, {"limit", c.limit}, {"relation", c.relation}, {"pass", c.pass}});
  }
  j["checks"] = checks_json;
  nlohmann::json reports_json = nlohmann::json::array();
  for (const auto& r : reports) {
    reports_json.push_back({{"label", r.label}, {"expected", r.expected}, {"report", r.report.to_json()}});
  }
  j["reports"] = reports_json;
  j["files"] = files;
  j["warnings"] = warnings;
  j["status"] = status();
  return j;
}

namespace {

void require_dim(int n) {
  if (n < 3) throw ConfigError("examples need n >= 3, got " + std::to_string(n));
}

Vec random_unit(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec d(n);
  do {
    for (int i = 0; i < n; ++i) d(i) = g(rng);
  } while (d.norm() < 1e-12);
  return d / d.norm();
}

// Three directions with positive last component: the pole, a diagonal and a
// direction close to the plane.
std::vector<Vec> half_space_rays(int n) {
  Vec pole = unit_vector(n, n - 1);
  Vec diag = unit_vector(n, 0) + unit_vector(n, n - 1);
  Vec low = unit_vector(n, 0) + unit_vector(n, 1) + 0.2 * unit_vector(n, n - 1);
  return {pole, diag / diag.norm(), low / low.norm()};
}

// Worst |dv/dx_n| / |grad v| at points of the flat boundary x_n = 0 with |x'| <= radius.
double plane_neumann_residual(const ScalarField& v, int n, double radius, int count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    Vec x = Vec::Zero(n);
    const Vec d = random_unit(rng, n - 1);
    const double rho = radius * std::pow(u(rng), 1.0 / (n - 1));
    x.head(n - 1) = rho * d;
    const Vec g = v.gradient(x);
    const double norm = g.norm();
    worst = std::max(worst, norm > 0.0 ? std::abs(g(n - 1)) / norm : 0.0);
  }
  return worst;
}

double null_alpha(const ScalarField& t, const Vec& center) {
  return std::min(0.05, 0.5 * t(center));
}

// Runs the independent probes concurrently; each task fills its own slot.
void run_tasks(std::vector<std::function<void()>>& tasks) {
  parallel_for(tasks.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) tasks[i]();
  });
}

// Smallest normalised form value (phi^T (P - M) phi) / (phi^T P phi) over
// random bumps (1 - |x - c|^2 / rho^2)^2 on the unknowns of `sys`.
double min_bump_form(const DiscreteSystem& sys, const TruncatedDomain& member, int count,
                     double rho_lo, double rho_hi, std::mt19937_64& rng) {
  const int n = member.dim();
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Vec lo = member.bbox_lo();
  const Vec hi = member.bbox_hi();
  double worst = std::numeric_limits<double>::infinity();
  for (int b = 0; b < count; ++b) {
    Vec c(n);
    do {
      for (int i = 0; i < n; ++i) c(i) = lo(i) + (hi(i) - lo(i)) * u(rng);
    } while (!member.contains(c));
    const double rho = rho_lo + (rho_hi - rho_lo) * u(rng);
    Vec phi(static_cast<Eigen::Index>(sys.size()));
    for (std::size_t i = 0; i < sys.size(); ++i) {
      const double s = 1.0 - (sys.points[i] - c).squaredNorm() / (rho * rho);
      phi(static_cast<Eigen::Index>(i)) = s > 0.0 ? s * s : 0.0;
    }
    const double energy = phi.dot(sys.P * phi);
    if (!(energy > 0.0)) continue;  // bump missed every node
    worst = std::min(worst, hardy_form_value(sys, phi) / energy);
  }
  return worst;
}

// Pipeline shared by the two half domains.
struct HalfDomainRun {
  GreenPipeline pipeline;
  HardyWeightResult weight;
  Vec center;
};

HalfDomainRun half_domain_run(const DomainSpec& domain, double a_fraction, const ExampleOptions& options,
                              ExampleResult& r) {
  if (!(a_fraction >= 0.0 && a_fraction <= 1.0)) {
    throw ConfigError("a_fraction must lie in [0, 1], got " + std::to_string(a_fraction));
  }
  const OperatorSpec op = OperatorSpec::laplacian_neumann(domain.dim());
  SamplingSpec sampling;
  sampling.seed = options.seed;
  GreenPipeline p = canonical_pipeline(domain, op, sampling);
  const double a_max = p.normalized.sup.a_max;
  const double a = a_fraction * a_max;
  HardyWeightResult w = construct_weight(p.inputs, a, a_max);
  const Vec center = star_center(domain, p.normalized.potential.density());
  r.parameters = {{"n", domain.dim()},
                  {"a_fraction", a_fraction},
                  {"a", a},
                  {"a_max", a_max},
                  {"sup_before_normalisation", p.normalized.original_sup},
                  {"density_mass", p.normalized.potential.density().mass()},
                  {"seed", options.seed}};
  r.weight_route = "green_kernel";
  r.fields = {"W", "v", "t"};
  r.warnings = w.warnings;
  return {std::move(p), std::move(w), center};
}

void add_half_domain_probes(ExampleResult& r, const HalfDomainRun& run, const DomainSpec& domain,
                            const TruncationSpec* truncation, int bumps, double bump_lo, double bump_hi,
                            std::uint64_t seed) {
  const int n = domain.dim();
  const ScalarField& t = run.weight.t;
  NullCriticalitySpec ns;
  ns.alpha = null_alpha(t, run.center);
  // u = 1 and A = I: the flux of grad t through every level set is the density mass
  ns.expected_slope = 0.5 * run.pipeline.normalized.potential.density().mass() * std::log(10.0);
  VerificationReport null_rep, trunc_rep;
  double bump_min = std::numeric_limits<double>::quiet_NaN();
  auto W = [w = run.weight.W](const Vec& x) { return w(x); };
  std::vector<std::function<void()>> tasks;
  tasks.emplace_back([&] {
    null_rep = null_criticality_coarea(run.weight.v, run.weight.W, t, domain, run.center, ns);
  });
  if (truncation != nullptr) {
    tasks.emplace_back([&] {
      trunc_rep = truncation_probe(W, run.pipeline.inputs.op, domain, *truncation);
    });
    tasks.emplace_back([&] {
      const int top = truncation->levels.back();
      DiscreteSystem sys = truncation_system(run.pipeline.inputs.op, domain, top, *truncation);
      sys.set_weight(W);
      std::mt19937_64 rng(seed + 31);
      bump_min = min_bump_form(sys, exhaustion_member(domain, top), bumps, bump_lo, bump_hi, rng);
    });
  }
  run_tasks(tasks);
  r.reports.push_back({"null_criticality", null_rep, "Divergent"});
  r.checks.push_back(check_le("null_slope_rel_error", null_rep.fit.at("slope_rel_error"), ns.slope_tol));
  if (truncation != nullptr) {
    r.reports.push_back({"truncations", trunc_rep, "PASS"});
    r.checks.push_back(check_ge("bump_form_min", bump_min, 0.0));
  } else {
    r.warnings.push_back("truncated eigenvalue and bump probes skipped for n = " + std::to_string(n));
  }
}

}  // namespace

// ---- half ball ---------------------------------------------------------------------

ExampleResult example_half_ball(int n, double a_fraction, const ExampleOptions& options) {
  require_dim(n);
  const DomainSpec domain = DomainSpec::half_ball(n);
  ExampleResult r;
  r.id = "half-ball";
  const HalfDomainRun run = half_domain_run(domain, a_fraction, options, r);
  const HardyWeightResult& w = run.weight;

  // W (2 dist)^2 along a ray toward the spherical cap
  Vec ray = unit_vector(n, 0) + unit_vector(n, n - 1);
  ray /= ray.norm();
  CsvTable cap({"dist", "W", "ratio"});
  for (double d : {1e-2, 1e-3, 1e-4}) {
    const double W = w.W((1.0 - d) * ray);
    const double ratio = W * 4.0 * d * d;
    cap.add_numbers({d, W, ratio});
    r.checks.push_back(check_le("cap_rate_dist_" + format_double(d), std::abs(ratio - 1.0), 0.1));
  }
  r.tables.push_back(cap);
  r.table_names.push_back("cap_ray");

  std::mt19937_64 rng(options.seed);
  r.checks.push_back(check_le("neumann_residual", plane_neumann_residual(w.v, n, 0.95, 200, rng), 1e-8));

  if (a_fraction == 0.0) {
    // classical weight |grad t|^2 / (4 t^2) off the density support
    const Density& density = run.pipeline.normalized.potential.density();
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    int accepted = 0;
    while (accepted < 500) {
      Vec x(n);
      for (int i = 0; i < n; ++i) x(i) = u(rng);
      x(n - 1) = std::abs(x(n - 1));
      if (x.norm() > 0.99 || x(n - 1) < 0.01) continue;
      if ((x - density.center()).norm() < 1.01 * density.radius()) continue;
      ++accepted;
      const double tt = w.t(x);
      const double cls = w.t.gradient(x).squaredNorm() / (4.0 * tt * tt);
      worst = std::max(worst, std::abs(w.W(x) - cls) / cls);
    }
    r.checks.push_back(check_le("classical_weight_rel_diff", worst, 1e-12));
  }

  if (options.run_probes) {
    TruncationSpec ts;
    ts.box_lo = Vec::Constant(n, -1.0);
    ts.box_lo(n - 1) = 0.0;
    ts.box_hi = Vec::Constant(n, 1.0);
    ts.h = n == 3 ? 1.0 / 16.0 : 1.0 / 6.0;
    add_half_domain_probes(r, run, domain, n <= 4 ? &ts : nullptr, 20, 0.1, 0.3, options.seed);
  }
  return r;
}

// ---- half space --------------------------------------------------------------------

ExampleResult example_half_space(int n, double a_fraction, const ExampleOptions& options) {
  require_dim(n);
  const DomainSpec domain = DomainSpec::half_space(n);
  ExampleResult r;
  r.id = "half-space";
  const HalfDomainRun run = half_domain_run(domain, a_fraction, options, r);
  const HardyWeightResult& w = run.weight;
  const double target = 0.25 * (n - 2) * (n - 2);
  r.parameters["target"] = target;

  CsvTable rays({"ray", "r", "W", "W_r2"});
  const auto dirs = half_space_rays(n);
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    std::vector<double> values;
    for (double R : {1e2, 1e3, 1e4}) {
      const double W = w.W(R * dirs[i]);
      values.push_back(W * R * R);
      rays.add_numbers({static_cast<double>(i), R, W, W * R * R});
      r.checks.push_back(check_le("ray_" + std::to_string(i) + "_r_" + format_double(R),
                                  std::abs(W * R * R / target - 1.0), 0.05));
    }
    // limit of W r^2 with a correction linear in 1/r
    const double fitted = values[2] + (values[2] - values[1]) / 9.0;
    r.parameters["fitted_limit_ray_" + std::to_string(i)] = fitted;
  }
  r.tables.push_back(rays);
  r.table_names.push_back("rays");

  std::mt19937_64 rng(options.seed);
  r.checks.push_back(check_le("neumann_residual", plane_neumann_residual(w.v, n, 10.0, 200, rng), 1e-8));

  if (options.run_probes) {
    TruncationSpec ts;
    const double B = n == 3 ? 8.0 : 4.0;
    ts.box_lo = Vec::Constant(n, -B);
    ts.box_lo(n - 1) = 0.0;
    ts.box_hi = Vec::Constant(n, B);
    ts.h = 0.5;
    ts.levels = n == 3 ? std::vector<int>{1, 2, 3} : std::vector<int>{1, 2};
    add_half_domain_probes(r, run, domain, n <= 4 ? &ts : nullptr, 20, 0.5, 2.0, options.seed);
  }
  return r;
}

// ---- exterior ball -------------------------------------------------------------------

double exterior_eps(int n, double gamma) {
  require_dim(n);
  if (!(gamma > 0.5 * (1.0 - n))) {
    throw ConfigError("gamma must exceed (1 - n)/2 = " + format_double(0.5 * (1.0 - n)));
  }
  return 1.0 / (n - 1.0 + 2.0 * gamma);
}

double exterior_v(int n, double eps, double r) {
  return std::sqrt((r - 1.0 + eps) * std::pow(r, 1.0 - n));
}

double exterior_v_prime(int n, double eps, double r) {
  const double g1 = std::pow(r, 1.0 - n) + (1.0 - n) * (r - 1.0 + eps) * std::pow(r, -static_cast<double>(n));
  return g1 / (2.0 * exterior_v(n, eps, r));
}

double exterior_W(int n, double eps, double r) {
  const double s = r - 1.0 + eps;
  return (n - 1.0) * (n - 3.0) / (4.0 * r * r) + 1.0 / (4.0 * s * s);
}

namespace {

double exterior_v_second(int n, double eps, double r) {
  const double s = r - 1.0 + eps;
  const double g = s * std::pow(r, 1.0 - n);
  const double g1 = std::pow(r, 1.0 - n) + (1.0 - n) * s * std::pow(r, -static_cast<double>(n));
  const double g2 = 2.0 * (1.0 - n) * std::pow(r, -static_cast<double>(n)) +
                    (1.0 - n) * (-static_cast<double>(n)) * s * std::pow(r, -n - 1.0);
  return g2 / (2.0 * std::sqrt(g)) - g1 * g1 / (4.0 * g * std::sqrt(g));
}

}  // namespace

ExampleResult example_exterior_ball(int n, double gamma, const ExampleOptions& options) {
  const double eps = exterior_eps(n, gamma);
  ExampleResult r;
  r.id = "ext-ball";
  r.parameters = {{"n", n}, {"gamma", gamma}, {"eps_gamma", eps}, {"seed", options.seed}};
  r.weight_route = "closed_form_supersolution";
  r.fields = {"W", "v", "w_gamma"};
  const Vec origin = Vec::Zero(n);
  const ScalarField v = ScalarField::radial([=](double s) { return exterior_v(n, eps, s); },
                                            [=](double s) { return exterior_v_prime(n, eps, s); }, origin);
  auto W_r = [=](double s) { return exterior_W(n, eps, s); };

  // -v'' - (n-1) v'/r - W v on log-spaced radii
  double pde = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double s = std::pow(10.0, 6.0 * i / 999.0);
    const double v0 = exterior_v(n, eps, s);
    const double v1 = exterior_v_prime(n, eps, s);
    const double v2 = exterior_v_second(n, eps, s);
    const double terms = std::abs(v2) + (n - 1.0) / s * std::abs(v1) + W_r(s) * v0;
    pde = std::max(pde, std::abs(-v2 - (n - 1.0) / s * v1 - W_r(s) * v0) / terms);
  }
  r.checks.push_back(check_le("pde_residual", pde, 1e-8));

  // grad v . n + gamma v at |x| = 1 with n = -x the outward normal of the exterior
  std::mt19937_64 rng(options.seed);
  double robin = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Vec x = random_unit(rng, n);
    robin = std::max(robin, std::abs(v.gradient(x).dot(-x) + gamma * v(x)));
  }
  r.checks.push_back(check_le("robin_residual", robin, 1e-10));

  // construct_weight_general with the 1D pair (1/(4t^2), sqrt t) induced by
  // v = r^{(1-n)/2} y(r): u = r^{(1-n)/2} and G = u (r - 1 + eps) solve
  // -Δ - (n-1)(n-3)/(4r^2) = 0, and t = r - 1 + eps
  const double c0 = (n - 1.0) * (n - 3.0) / 4.0;
  const OperatorSpec shifted(
      n, "custom", [n](const Vec&) { return Mat::Identity(n, n); }, [n](const Vec&) { return Vec::Zero(n); },
      [n](const Vec&) { return Vec::Zero(n); }, [c0](const Vec& x) { return -c0 / x.squaredNorm(); },
      [](const Vec&) { return 1.0; }, [gamma](const Vec&) { return gamma; }, true, 1.0);
  const double half = 0.5 * (1.0 - n);
  const ScalarField u = ScalarField::radial([=](double s) { return std::pow(s, half); },
                                            [=](double s) { return half * std::pow(s, half - 1.0); }, origin);
  const ScalarField G = ScalarField::radial(
      [=](double s) { return std::pow(s, half) * (s - 1.0 + eps); },
      [=](double s) { return std::pow(s, half) + half * std::pow(s, half - 1.0) * (s - 1.0 + eps); }, origin);
  std::vector<Vec> probes;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < 200; ++i) probes.push_back(std::pow(10.0, 4.0 * unif(rng)) * random_unit(rng, n));
  WeightInputs in{G, u, shifted, {}, probes};
  const OneDimWeight classical{[](double s) { return 1.0 / (4.0 * s * s); }, [](double s) { return std::sqrt(s); },
                               Interval{0.0, std::numeric_limits<double>::infinity()}};
  const HardyWeightResult general = construct_weight_general(in, classical);
  double w_diff = 0.0, v_diff = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Vec x = std::pow(10.0, 4.0 * unif(rng)) * random_unit(rng, n);
    const double s = x.norm();
    const double W = W_r(s);
    w_diff = std::max(w_diff, std::abs(general.W(x) + c0 / (s * s) - W) / W);
    v_diff = std::max(v_diff, std::abs(general.v(x) - v(x)) / v(x));
  }
  r.checks.push_back(check_le("general_route_W_rel_diff", w_diff, 1e-8));
  r.checks.push_back(check_le("general_route_v_rel_diff", v_diff, 1e-8));

  CsvTable profile({"r", "v", "W", "W_r2"});
  for (int i = 0; i <= 120; ++i) {
    const double s = std::pow(10.0, 6.0 * i / 120.0);
    profile.add_numbers({s, exterior_v(n, eps, s), W_r(s), W_r(s) * s * s});
  }
  r.tables.push_back(profile);
  r.table_names.push_back("profile");

  if (options.run_probes) {
    VerificationReport khas, null_rep, opt;
    NullCriticalitySpec ns;
    ns.expected_slope = unit_sphere_area(n) * 0.25 * (n - 2.0) * (n - 2.0) * std::log(10.0);
    std::vector<std::function<void()>> tasks;
    tasks.emplace_back([&] {
      // v / w = 1 / log(r - 1 + eps); the common factor r^{(1-n)/2} is dropped
      // so that the fields stay representable at r ~ 1e120
      const ScalarField v_hat([=](const Vec& x) { return std::sqrt(x.norm() - 1.0 + eps); });
      const ScalarField w_hat([=](const Vec& x) {
        const double s = x.norm() - 1.0 + eps;
        return std::sqrt(s) * std::log(s);
      });
      KhasminskiiSpec ks;
      ks.seed = options.seed;
      khas = khasminskii_probe(v_hat, w_hat, DomainSpec::exterior_ball(n), origin, ks);
    });
    tasks.emplace_back([&] {
      null_rep = null_criticality_shells([=](double s) { return exterior_v(n, eps, s); }, W_r, n, 1.0, ns);
    });
    tasks.emplace_back([&] {
      OptimalitySpec os;
      os.r_inner = 1.0;
      os.robin_inner = true;
      os.gamma = gamma;
      opt = optimality_at_infinity_radial([=](const Vec& x) { return W_r(x.norm()); }, n, os);
    });
    run_tasks(tasks);
    r.reports.push_back({"khasminskii", khas, "Decaying"});
    r.reports.push_back({"null_criticality", null_rep, "Divergent"});
    r.checks.push_back(check_le("null_slope_rel_error", null_rep.fit.at("slope_rel_error"), ns.slope_tol));
    r.reports.push_back({"lambda0_robin_annuli", opt, "PASS"});
  }
  return r;
}

// ---- comparison with the earlier weight ------------------------------------------------

KlComparison compare_kl_weight(int n, double gamma, int points, double r_max) {
  if (n < 3) throw ConfigError("compare_kl_weight needs n >= 3, got " + std::to_string(n));
  if (!(gamma > 0.0)) throw ConfigError("compare_kl_weight needs gamma > 0");
  if (points < 2 || !(r_max > 1.0)) throw ConfigError("compare_kl_weight needs points >= 2 and r_max > 1");
  KlComparison c;
  c.n = n;
  c.gamma = gamma;
  c.eps_ours = exterior_eps(n, gamma);
  c.eps_kl = 1.0 / (2.0 * gamma);
  const double c0 = (n - 1.0) * (n - 3.0) / 4.0;
  c.expected_ratio_at_one = (c0 + 1.0 / (4.0 * c.eps_ours * c.eps_ours)) / (c0 + gamma * gamma);
  c.dominates = true;
  for (int i = 0; i < points; ++i) {
    const double r = std::pow(r_max, static_cast<double>(i) / (points - 1));
    const double ours = exterior_W(n, c.eps_ours, r);
    const double kl = exterior_W(n, c.eps_kl, r);
    c.table.add_numbers({r, ours, kl, ours / kl});
    c.dominates = c.dominates && ours > kl;
    if (i == 0) c.ratio_at_one = ours / kl;
    if (i == points - 1) c.ratio_at_far = ours / kl;
  }
  return c;
}

ExampleResult example_compare_kl(int n, double gamma) {
  const KlComparison c = compare_kl_weight(n, gamma);
  ExampleResult r;
  r.id = "compare-kl";
  r.parameters = {{"n", n},
                  {"gamma", gamma},
                  {"eps_ours", c.eps_ours},
                  {"eps_kl", c.eps_kl},
                  {"ratio_at_one", c.ratio_at_one},
                  {"expected_ratio_at_one", c.expected_ratio_at_one},
                  {"ratio_at_far", c.ratio_at_far}};
  r.weight_route = "closed_form_supersolution";
  r.fields = {"W_ours", "W_KL"};
  r.checks.push_back(check_le("ratio_at_one_rel_error",
                              std::abs(c.ratio_at_one - c.expected_ratio_at_one) / c.expected_ratio_at_one, 1e-12));
  r.checks.push_back(check_ge("dominates", c.dominates ? 1.0 : 0.0, 1.0));
  r.checks.push_back(check_le("ratio_at_far_minus_one", std::abs(c.ratio_at_far - 1.0), 1e-3));
  r.tables.push_back(c.table);
  r.table_names.push_back("table");
  return r;
}

// ---- output --------------------------------------------------------------------------

void write_example(ExampleResult& result, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create '" + dir + "': " + ec.message());
  result.files.clear();
  auto emit = [&](const std::string& name, const std::string& content) {
    write_text_file((fs::path(dir) / name).string(), content);
    result.files.push_back(name);
  };
  for (std::size_t i = 0; i < result.tables.size(); ++i) {
    emit(result.id + "_" + result.table_names[i] + ".csv", result.tables[i].str());
  }
  for (const auto& r : result.reports) {
    emit(result.id + "_" + r.label + "_levels.csv", levels_table(r.report).str());
  }
  const std::string json_name = result.id + ".json";
  result.files.push_back(json_name);
  write_text_file((fs::path(dir) / json_name).string(), json_text(result.to_json()));
}

}  // namespace hardy
