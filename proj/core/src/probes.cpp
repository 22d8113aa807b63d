#include "hardy/probes.hpp"

#include "hardy/parallel.hpp"
#include "hardy/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <random>

namespace hardy {

// ---- report --------------------------------------------------------------------

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["schema"] = "hardy-forge/1";
  j["probe"] = probe;
  j["value_name"] = value_name;
  j["rule"] = rule;
  j["verdict"] = verdict;
  j["diagnostic"] = diagnostic;
  nlohmann::json lv = nlohmann::json::array();
  for (const auto& l : levels) {
    lv.push_back({{"k", l.k}, {"R", l.R}, {"h", l.h}, {value_name, l.value}, {"residual", l.residual}});
  }
  j["levels"] = lv;
  j["fit"] = fit;
  j["tolerances"] = tolerances;
  return j;
}

VerificationReport VerificationReport::from_json(const nlohmann::json& j) {
  VerificationReport r;
  r.probe = j.at("probe").get<std::string>();
  r.value_name = j.at("value_name").get<std::string>();
  r.rule = j.value("rule", "");
  r.verdict = j.value("verdict", "");
  r.diagnostic = j.value("diagnostic", "");
  for (const auto& l : j.at("levels")) {
    r.levels.push_back({l.at("k").get<int>(), l.at("R").get<double>(), l.at("h").get<double>(),
                        l.at(r.value_name).get<double>(), l.at("residual").get<double>()});
  }
  for (const auto& [key, value] : j.at("fit").items()) {
    r.fit[key] = value.is_null() ? std::numeric_limits<double>::quiet_NaN() : value.get<double>();
  }
  for (const auto& [key, value] : j.at("tolerances").items()) r.tolerances[key] = value.get<double>();
  return r;
}

namespace {

double tol_or(const VerificationReport& r, const std::string& key, double fallback) {
  auto it = r.tolerances.find(key);
  return it == r.tolerances.end() ? fallback : it->second;
}

std::string decide_khasminskii(const VerificationReport& r) {
  const auto& lv = r.levels;
  if (lv.size() < 2) return "NotDecaying";
  bool decreasing = true;
  for (std::size_t i = 1; i < lv.size(); ++i) decreasing = decreasing && lv[i].value < lv[i - 1].value;
  const double drop = lv.front().value / lv.back().value;
  const bool ok = decreasing && drop >= tol_or(r, "drop_factor", 2.0) &&
                  lv.back().value <= tol_or(r, "final_max", 1e-2);
  return ok ? "Decaying" : "NotDecaying";
}

struct GrowthFit {
  std::string cls;
  double slope;
};

// Convergent when the trailing increments decay geometrically, Divergent when
// they stay above slope_min times the first increment, Inconclusive otherwise.
GrowthFit decide_growth(const std::vector<double>& partials, int min_decades, double slope_min,
                        double ratio_convergent) {
  const std::size_t k = partials.size();
  GrowthFit f{"Inconclusive", std::numeric_limits<double>::quiet_NaN()};
  if (k < 2) return f;
  std::vector<double> inc(k);
  inc[0] = partials[0];
  for (std::size_t i = 1; i < k; ++i) inc[i] = partials[i] - partials[i - 1];
  const std::size_t first = std::min(k / 2, k - 2);
  const double mean_i = 0.5 * static_cast<double>(first + k - 1);
  double mean_p = 0.0;
  for (std::size_t i = first; i < k; ++i) mean_p += partials[i];
  mean_p /= static_cast<double>(k - first);
  double num = 0.0, den = 0.0;
  for (std::size_t i = first; i < k; ++i) {
    num += (static_cast<double>(i) - mean_i) * (partials[i] - mean_p);
    den += (static_cast<double>(i) - mean_i) * (static_cast<double>(i) - mean_i);
  }
  f.slope = num / den;
  const auto window = static_cast<std::size_t>(min_decades);
  if (k < window + 1) return f;
  bool geometric = true;
  for (std::size_t i = k - window; i < k; ++i) {
    geometric = geometric && inc[i - 1] > 0.0 && inc[i] >= 0.0 && inc[i] / inc[i - 1] <= ratio_convergent;
  }
  if (geometric) {
    f.cls = "Convergent";
    return f;
  }
  const double unit = std::abs(inc[0]) > 0.0 ? std::abs(inc[0]) : 1.0;
  bool sustained = true;
  for (std::size_t i = k - window; i < k; ++i) sustained = sustained && inc[i] >= slope_min * unit;
  if (sustained) f.cls = "Divergent";
  return f;
}

std::string decide_null_criticality(const VerificationReport& r) {
  std::vector<double> partials;
  for (const auto& l : r.levels) partials.push_back(l.value);
  return decide_growth(partials, static_cast<int>(tol_or(r, "min_decades", 3)),
                       tol_or(r, "slope_min", 1e-3), tol_or(r, "ratio_convergent", 0.9))
      .cls;
}

struct Extrapolated {
  std::vector<double> R;
  std::vector<double> lambda;
  std::vector<double> order;
};

Extrapolated extrapolate_levels(const VerificationReport& r) {
  std::map<int, std::vector<LevelRecord>> by_k;
  for (const auto& l : r.levels) by_k[l.k].push_back(l);
  Extrapolated e;
  for (auto& [k, lv] : by_k) {
    std::sort(lv.begin(), lv.end(), [](const auto& a, const auto& b) { return a.h > b.h; });
    const std::size_t m = lv.size();
    double value = lv.back().value;
    double order = std::numeric_limits<double>::quiet_NaN();
    if (m >= 2) {
      const double ratio = lv[m - 2].h / lv[m - 1].h;
      value = lv[m - 1].value + (lv[m - 1].value - lv[m - 2].value) / (ratio * ratio - 1.0);
    }
    if (m >= 3) {
      const double d1 = lv[m - 3].value - lv[m - 2].value;
      const double d2 = lv[m - 2].value - lv[m - 1].value;
      order = std::log(d1 / d2) / std::log(lv[m - 3].h / lv[m - 2].h);
    }
    e.R.push_back(lv.front().R);
    e.lambda.push_back(value);
    e.order.push_back(order);
  }
  return e;
}

// l_inf + C/L^2 + D/L^3 by least squares (two terms when fewer than three levels)
std::pair<double, double> fit_log_tail(const Extrapolated& e, double r_inner) {
  const auto m = static_cast<Eigen::Index>(e.R.size());
  if (m == 0) return {std::numeric_limits<double>::quiet_NaN(), 0.0};
  if (m == 1) return {e.lambda[0], 0.0};
  const Eigen::Index terms = m >= 3 ? 3 : 2;
  Mat A(m, terms);
  Vec b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double L = std::log(e.R[static_cast<std::size_t>(i)] / r_inner);
    A(i, 0) = 1.0;
    A(i, 1) = 1.0 / (L * L);
    if (terms == 3) A(i, 2) = 1.0 / (L * L * L);
    b(i) = e.lambda[static_cast<std::size_t>(i)];
  }
  const Vec c = A.colPivHouseholderQr().solve(b);
  return {c(0), c(1)};
}

std::string decide_optimality(const VerificationReport& r) {
  const Extrapolated e = extrapolate_levels(r);
  if (e.lambda.empty()) return "FAIL";
  const double tol_up = tol_or(r, "tol_up", 0.02);
  bool above = true, nonincreasing = true;
  for (std::size_t i = 0; i < e.lambda.size(); ++i) {
    above = above && e.lambda[i] >= 1.0 - tol_up;
    if (i > 0) nonincreasing = nonincreasing && e.lambda[i] <= e.lambda[i - 1] + 1e-9;
  }
  const double limit = fit_log_tail(e, tol_or(r, "r_inner", 1.0)).first;
  const bool near = std::abs(limit - 1.0) <= tol_or(r, "tol_limit", 0.05);
  return above && nonincreasing && near ? "PASS" : "FAIL";
}

std::string decide_truncations(const VerificationReport& r) {
  if (r.levels.empty()) return "FAIL";
  const double tol_below = tol_or(r, "tol_below", 0.05);
  bool ok = true;
  for (std::size_t i = 0; i < r.levels.size(); ++i) {
    ok = ok && r.levels[i].value >= 1.0 - tol_below;
    if (i > 0) ok = ok && r.levels[i].value <= r.levels[i - 1].value * (1.0 + 1e-9);
  }
  return ok ? "PASS" : "FAIL";
}

}  // namespace

std::string redecide(const VerificationReport& report) {
  if (report.probe == "khasminskii") return decide_khasminskii(report);
  if (report.probe == "null_criticality") return decide_null_criticality(report);
  if (report.probe == "optimality_at_infinity") return decide_optimality(report);
  if (report.probe == "truncations") return decide_truncations(report);
  throw ConfigError("redecide: unknown probe '" + report.probe + "'");
}

// ---- Khas'minskii ----------------------------------------------------------------

double khasminskii_radius(const KhasminskiiSpec& spec, int k) {
  return std::pow(10.0, spec.decades_per_level * k);
}

namespace {

bool half_domain(const DomainSpec& d) {
  return d.kind() == DomainKind::HalfSpace || d.kind() == DomainKind::HalfBall;
}

Vec random_direction(std::mt19937_64& rng, int n, bool upper) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec d(n);
  double norm = 0.0;
  while (!(norm > 1e-12)) {
    for (int i = 0; i < n; ++i) d(i) = g(rng);
    norm = d.norm();
  }
  d /= norm;
  if (upper) d(n - 1) = std::abs(d(n - 1));
  return d;
}

}  // namespace

std::vector<Vec> tail_samples(const DomainSpec& domain, const Vec& center, double R, double decades,
                              int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double r = i < count / 4 ? R : R * std::pow(10.0, decades * unit(rng));
    Vec x = center + r * random_direction(rng, domain.dim(), half_domain(domain));
    if (half_domain(domain)) x(domain.dim() - 1) = std::abs(x(domain.dim() - 1));
    out.push_back(std::move(x));
  }
  return out;
}

VerificationReport khasminskii_probe(const ScalarField& u0, const ScalarField& u1,
                                     const DomainSpec& domain, const Vec& center,
                                     const KhasminskiiSpec& spec) {
  VerificationReport rep;
  rep.probe = "khasminskii";
  rep.value_name = "ratio";
  rep.rule = "max u0/u1 over the complement of the k-th member strictly decreasing, "
             "dropping by drop_factor and ending at or below final_max";
  rep.tolerances = {{"drop_factor", 2.0}, {"final_max", 1e-2}};
  for (int k = 1; k <= spec.K_max; ++k) {
    const double R = khasminskii_radius(spec, k);
    double worst = -std::numeric_limits<double>::infinity();
    for (const Vec& x : tail_samples(domain, center, R, spec.tail_decades, spec.samples_per_level,
                                     spec.seed + static_cast<std::uint64_t>(k))) {
      const double d = u1(x);
      if (!(d > 0.0)) throw HypothesisError("khasminskii_probe: u1 is not positive on the tail");
      worst = std::max(worst, u0(x) / d);
    }
    rep.levels.push_back({k, R, 0.0, worst, 0.0});
  }
  rep.fit["final"] = rep.levels.back().value;
  rep.fit["drop"] = rep.levels.front().value / rep.levels.back().value;
  rep.verdict = decide_khasminskii(rep);
  return rep;
}

// ---- flux ----------------------------------------------------------------------

Vec star_center(const DomainSpec& domain, const Density& density) {
  Vec c = density.center();
  if (half_domain(domain)) c(domain.dim() - 1) = 0.0;
  return c;
}

namespace {

// Root of f on [lo, hi] with f(lo) > 0 > f(hi).
double bracketed_root(const std::function<double(double)>& f, double lo, double hi) {
  boost::math::tools::eps_tolerance<double> tol(50);
  std::uintmax_t iters = 200;
  auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
  return 0.5 * (a + b);
}

// Largest rho with G(center + rho theta) <= t, by outward doubling then bracketing.
double ray_level(const ScalarField& G, const DomainSpec& domain, const Vec& center, const Vec& theta,
                 double t) {
  auto f = [&](double rho) { return G(center + rho * theta) - t; };
  if (!(f(0.0) > 0.0)) throw ConfigError("level is not below the potential at the star centre");
  double hi = 1.0;
  if (domain.kind() == DomainKind::HalfBall) {
    hi = domain.radius() * (1.0 - 1e-12);
    if (f(hi) >= 0.0) throw NumericalError("level set reaches the Dirichlet cap");
  } else {
    int guard = 0;
    while (f(hi) >= 0.0) {
      hi *= 2.0;
      if (++guard > 400) throw NumericalError("level set not found along a ray");
    }
  }
  return bracketed_root(f, 0.0, hi);
}

}  // namespace

double level_set_flux(const ScalarField& G, const OperatorSpec& op, const DomainSpec& domain,
                      const Vec& center, double t, int order) {
  if (domain.kind() == DomainKind::Box || domain.kind() == DomainKind::ExteriorBall) {
    throw ConfigError("level_set_flux supports star-shaped level sets of half domains and R^n");
  }
  const int n = domain.dim();
  const SphereRule rule = sphere_rule(n, order, half_domain(domain));
  double total = 0.0;
  for (std::size_t i = 0; i < rule.directions.size(); ++i) {
    const Vec& theta = rule.directions[i];
    const double rho = ray_level(G, domain, center, theta, t);
    const Vec x = center + rho * theta;
    const Vec g = G.gradient(x);
    const double radial = g.dot(theta);
    if (!(radial < 0.0)) throw DomainError("level set is not star-shaped about the centre");
    total += rule.weights[i] * std::pow(rho, n - 1) * op.a_norm_sq(x, g) / (-radial);
  }
  return total;
}

FluxReport flux_constancy_check(const ScalarField& G, const OperatorSpec& op,
                                const DomainSpec& domain, const Density& density, double t1,
                                double t2, int order) {
  if (!(t1 > 0.0) || !(t2 > t1)) throw ConfigError("flux_constancy_check needs 0 < t1 < t2");
  const int n = domain.dim();
  const SphereRule rim = sphere_rule(n, 16, half_domain(domain));
  double rim_min = std::numeric_limits<double>::infinity();
  for (const Vec& d : rim.directions) {
    Vec x = density.center() + density.radius() * d;
    if (half_domain(domain) && x(n - 1) < 0.0) continue;
    rim_min = std::min(rim_min, G(x));
  }
  if (t2 >= rim_min) {
    throw ConfigError("level t2 = " + std::to_string(t2) + " meets the support of the density");
  }
  const Vec c = star_center(domain, density);
  FluxReport r;
  r.flux1 = level_set_flux(G, op, domain, c, t1, order);
  r.flux2 = level_set_flux(G, op, domain, c, t2, order);
  r.relative_difference = std::abs(r.flux1 - r.flux2) / std::abs(r.flux1);
  return r;
}

// ---- null criticality ----------------------------------------------------------

namespace {

double radius_of_level(const ScalarField& t, int n, double level) {
  auto f = [&](double r) { return t(radial_point(n, r)) - level; };
  double lo = 1e-6;
  if (!(f(lo) > 0.0)) throw ConfigError("level is above the ratio field near the centre");
  double hi = 1.0;
  int guard = 0;
  while (f(hi) >= 0.0) {
    hi *= 2.0;
    if (++guard > 400) throw NumericalError("level radius not found");
  }
  return bracketed_root(f, lo, hi);
}

void finish_null_report(VerificationReport& rep, const NullCriticalitySpec& spec) {
  rep.probe = "null_criticality";
  rep.value_name = "integral";
  rep.rule = "Convergent if the trailing min_decades increment ratios are <= ratio_convergent; "
             "Divergent if those increments stay >= slope_min times the first one";
  rep.tolerances = {{"min_decades", static_cast<double>(spec.min_decades)},
                    {"slope_min", spec.slope_min},
                    {"ratio_convergent", 0.9},
                    {"slope_tol", spec.slope_tol}};
  std::vector<double> partials;
  for (const auto& l : rep.levels) partials.push_back(l.value);
  const GrowthFit f = decide_growth(partials, spec.min_decades, spec.slope_min, 0.9);
  rep.verdict = f.cls;
  rep.fit["slope"] = f.slope;
  if (std::isfinite(spec.expected_slope)) {
    rep.fit["expected_slope"] = spec.expected_slope;
    rep.fit["slope_rel_error"] = std::abs(f.slope - spec.expected_slope) / std::abs(spec.expected_slope);
  }
}

}  // namespace

VerificationReport null_criticality_radial(const ScalarField& v, const ScalarField& W,
                                           const ScalarField& t, int n,
                                           const NullCriticalitySpec& spec) {
  using boost::math::quadrature::gauss_kronrod;
  const double omega = unit_sphere_area(n);
  auto integrand = [&](double s) {
    const double r = std::exp(s);
    const Vec x = radial_point(n, r);
    const double vv = v(x);
    return omega * vv * vv * W(x) * std::pow(r, n);
  };
  VerificationReport rep;
  double previous_radius = radius_of_level(t, n, spec.alpha);
  double total = 0.0;
  for (int j = 1; j <= spec.decades; ++j) {
    const double eps = spec.alpha * std::pow(10.0, -j);
    const double r = radius_of_level(t, n, eps);
    double err = 0.0;
    total += gauss_kronrod<double, 31>::integrate(integrand, std::log(previous_radius), std::log(r), 15,
                                                  1e-11, &err);
    rep.levels.push_back({j, eps, 0.0, total, err});
    previous_radius = r;
  }
  finish_null_report(rep, spec);
  rep.fit["route"] = 0.0;
  return rep;
}

namespace {

std::vector<double> graded_edges(double h0, double ratio, double extent, bool both_sides) {
  std::vector<double> pos{0.0};
  double w = h0;
  while (pos.back() < extent) {
    pos.push_back(pos.back() + w);
    w *= ratio;
  }
  if (!both_sides) return pos;
  std::vector<double> edges;
  for (std::size_t i = pos.size(); i-- > 1;) edges.push_back(-pos[i]);
  edges.insert(edges.end(), pos.begin(), pos.end());
  return edges;
}

}  // namespace

VerificationReport null_criticality_grid(const ScalarField& v, const ScalarField& W,
                                         const ScalarField& t, const DomainSpec& domain,
                                         const Vec& center, const NullCriticalitySpec& spec,
                                         const SandwichGrid& grid) {
  const int n = domain.dim();
  const bool half = half_domain(domain);
  const double eps_min = spec.alpha * std::pow(10.0, -spec.decades);
  // level radii measured along the first axis from the centre
  auto radius_along = [&](double level) {
    auto f = [&](double r) { return t(center + r * unit_vector(n, 0)) - level; };
    if (!(f(0.0) > 0.0)) throw ConfigError("alpha is above the ratio field at the centre");
    double hi = 1.0;
    int guard = 0;
    while (f(hi) >= 0.0) {
      hi *= 2.0;
      if (++guard > 400) throw NumericalError("level radius not found");
    }
    return bracketed_root(f, 0.0, hi);
  };
  const double r_alpha = radius_along(spec.alpha);
  const double extent = grid.extent > 0.0 ? grid.extent : 2.0 * radius_along(eps_min);
  std::vector<std::vector<double>> edges(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    edges[static_cast<std::size_t>(i)] = graded_edges(grid.h0, grid.ratio, extent, !(half && i == n - 1));
  }
  VerificationReport rep;
  // width of the cell that straddles the alpha level along the first axis
  {
    const auto& e = edges[0];
    auto it = std::upper_bound(e.begin(), e.end(), r_alpha);
    const double width = it == e.end() || it == e.begin() ? extent : *it - *(it - 1);
    if (width > 0.25 * r_alpha) {
      rep.diagnostic = "grid does not resolve the alpha level set";
      finish_null_report(rep, spec);
      rep.verdict = "Inconclusive";
      return rep;
    }
  }
  std::vector<std::size_t> counts;
  std::size_t total_cells = 1;
  for (const auto& e : edges) {
    counts.push_back(e.size() - 1);
    total_cells *= e.size() - 1;
  }
  const std::size_t slabs = counts[0];
  const std::size_t per_slab = total_cells / slabs;
  std::vector<std::vector<double>> bucket(slabs, std::vector<double>(static_cast<std::size_t>(spec.decades) + 1, 0.0));
  parallel_for(slabs, [&](std::size_t b, std::size_t e) {
    Vec x(n);
    for (std::size_t s = b; s < e; ++s) {
      for (std::size_t c = 0; c < per_slab; ++c) {
        std::size_t rest = c;
        double vol = edges[0][s + 1] - edges[0][s];
        x(0) = center(0) + 0.5 * (edges[0][s] + edges[0][s + 1]);
        for (int i = 1; i < n; ++i) {
          const auto& ed = edges[static_cast<std::size_t>(i)];
          const std::size_t m = rest % counts[static_cast<std::size_t>(i)];
          rest /= counts[static_cast<std::size_t>(i)];
          x(i) = (half && i == n - 1 ? 0.0 : center(i)) + 0.5 * (ed[m] + ed[m + 1]);
          vol *= ed[m + 1] - ed[m];
        }
        const double tt = t(x);
        if (!(tt < spec.alpha) || !(tt > eps_min)) continue;
        const int j = std::min(spec.decades, static_cast<int>(std::ceil(std::log10(spec.alpha / tt))));
        const double vv = v(x);
        bucket[s][static_cast<std::size_t>(std::max(j, 1))] += vv * vv * W(x) * vol;
      }
    }
  });
  std::vector<double> sums(static_cast<std::size_t>(spec.decades) + 1, 0.0);
  for (const auto& b : bucket) {
    for (std::size_t j = 0; j < b.size(); ++j) sums[j] += b[j];
  }
  double running = 0.0;
  for (int j = 1; j <= spec.decades; ++j) {
    running += sums[static_cast<std::size_t>(j)];
    rep.levels.push_back({j, spec.alpha * std::pow(10.0, -j), grid.h0, running, 0.0});
  }
  finish_null_report(rep, spec);
  rep.fit["route"] = 1.0;
  rep.fit["cells"] = static_cast<double>(total_cells);
  return rep;
}

VerificationReport null_criticality_shells(const std::function<double(double)>& v,
                                           const std::function<double(double)>& W, int n,
                                           double r0, const NullCriticalitySpec& spec) {
  using boost::math::quadrature::gauss_kronrod;
  const double omega = unit_sphere_area(n);
  auto integrand = [&](double s) {
    const double r = std::exp(s);
    const double vv = v(r);
    return omega * vv * vv * W(r) * std::pow(r, n);
  };
  VerificationReport rep;
  double total = 0.0;
  double lo = r0;
  for (int j = 1; j <= spec.decades; ++j) {
    const double R = r0 * std::pow(10.0, j);
    double err = 0.0;
    total += gauss_kronrod<double, 31>::integrate(integrand, std::log(lo), std::log(R), 15, 1e-11, &err);
    rep.levels.push_back({j, R, 0.0, total, err});
    lo = R;
  }
  finish_null_report(rep, spec);
  rep.fit["route"] = 2.0;
  return rep;
}

VerificationReport null_criticality_coarea(const ScalarField& v, const ScalarField& W,
                                           const ScalarField& t, const DomainSpec& domain,
                                           const Vec& center, const NullCriticalitySpec& spec,
                                           int order, int nodes_per_decade) {
  if (domain.kind() == DomainKind::Box || domain.kind() == DomainKind::ExteriorBall) {
    throw ConfigError("null_criticality_coarea needs star-shaped level sets");
  }
  const int n = domain.dim();
  const SphereRule rule = sphere_rule(n, order, half_domain(domain));
  auto level_integral = [&](double s) {
    double total = 0.0;
    for (std::size_t i = 0; i < rule.directions.size(); ++i) {
      const Vec& theta = rule.directions[i];
      const double rho = ray_level(t, domain, center, theta, s);
      const Vec x = center + rho * theta;
      const double radial = -t.gradient(x).dot(theta);
      if (!(radial > 0.0)) throw DomainError("level set is not star-shaped about the centre");
      const double vv = v(x);
      total += rule.weights[i] * std::pow(rho, n - 1) * vv * vv * W(x) / radial;
    }
    return total;
  };
  VerificationReport rep;
  const double ln10 = std::log(10.0);
  double running = 0.0;
  for (int j = 1; j <= spec.decades; ++j) {
    const double hi = std::log(spec.alpha) - (j - 1) * ln10;
    const GaussRule g = gauss_legendre(nodes_per_decade, hi - ln10, hi);
    double piece = 0.0;
    for (std::size_t q = 0; q < g.nodes.size(); ++q) {
      const double s = std::exp(g.nodes[q]);
      piece += g.weights[q] * s * level_integral(s);
    }
    running += piece;
    rep.levels.push_back({j, spec.alpha * std::pow(10.0, -j), 0.0, running, 0.0});
  }
  finish_null_report(rep, spec);
  rep.fit["route"] = 3.0;
  return rep;
}

// ---- truncations ------------------------------------------------------------------

DiscreteSystem truncation_system(const OperatorSpec& op, const DomainSpec& domain, int level,
                                 const TruncationSpec& spec) {
  const TruncatedDomain member = exhaustion_member(domain, level);
  GridSpec g;
  g.lo = spec.box_lo;
  g.hi = spec.box_hi;
  g.h = spec.h;
  g.robin_bottom = member.robin_is_plane();
  if (g.robin_bottom && std::abs(member.robin_plane() - g.lo(g.lo.size() - 1)) > 1e-12) {
    throw ConfigError("truncation box must sit on the Robin plane");
  }
  g.inside = [member](const Vec& x) { return member.contains(x); };
  return discretize(op, Grid(g));
}

VerificationReport truncation_probe(const std::function<double(const Vec&)>& W,
                                    const OperatorSpec& op, const DomainSpec& domain,
                                    const TruncationSpec& spec) {
  VerificationReport rep;
  rep.probe = "truncations";
  rep.value_name = "lambda0";
  rep.rule = "PASS iff every lambda0 >= 1 - tol_below and lambda0 is nonincreasing along the "
             "nested members";
  rep.tolerances = {{"tol_below", spec.tol_below}};
  for (int k : spec.levels) {
    DiscreteSystem sys = truncation_system(op, domain, k, spec);
    sys.set_weight(W);
    const EigResult e = principal_eigenvalue(sys);
    if (!e.positive) rep.diagnostic += "eigenvector not positive at k=" + std::to_string(k) + "; ";
    rep.levels.push_back({k, exhaustion_radius(domain, k), spec.h, e.lambda0, e.residual});
  }
  rep.verdict = decide_truncations(rep);
  return rep;
}

// ---- optimality at infinity -----------------------------------------------------

VerificationReport optimality_at_infinity_radial(const std::function<double(const Vec&)>& W, int n,
                                                 const OptimalitySpec& spec) {
  VerificationReport rep;
  rep.probe = "optimality_at_infinity";
  rep.value_name = "lambda0";
  rep.rule = "Richardson in h, fit l_inf + C/L^2 + D/L^3 in L = log(R/r_inner); PASS iff every "
             "lambda0 >= 1 - tol_up, lambda0 nonincreasing in R and |l_inf - 1| <= tol_limit";
  rep.tolerances = {{"tol_up", spec.tol_up}, {"tol_limit", spec.tol_limit}, {"r_inner", spec.r_inner}};
  int k = 0;
  for (double R : spec.outer) {
    ++k;
    const double L = std::log(R / spec.r_inner);
    const int base = static_cast<int>(std::ceil(spec.cells_per_unit_log * L));
    for (int m = 0; m < spec.refinements; ++m) {
      RadialGridSpec g;
      g.n = n;
      g.r_in = spec.r_inner;
      g.r_out = R;
      g.cells = base << m;
      g.robin_inner = spec.robin_inner;
      g.gamma = spec.gamma;
      auto sys = discretize_radial(g);
      sys.set_weight(W);
      const EigResult e = principal_eigenvalue(sys);
      if (!e.positive) rep.diagnostic += "eigenvector not positive at k=" + std::to_string(k) + "; ";
      rep.levels.push_back({k, R, L / g.cells, e.lambda0, e.residual});
    }
  }
  const Extrapolated e = extrapolate_levels(rep);
  const auto [limit, rate] = fit_log_tail(e, spec.r_inner);
  rep.fit["limit"] = limit;
  rep.fit["rate"] = rate;
  for (std::size_t i = 0; i < e.lambda.size(); ++i) {
    rep.fit["lambda0_extrapolated_" + std::to_string(i + 1)] = e.lambda[i];
    rep.fit["observed_order_" + std::to_string(i + 1)] = e.order[i];
  }
  rep.verdict = decide_optimality(rep);
  return rep;
}

bool optimality_literal_rule(const VerificationReport& report) {
  const Extrapolated e = extrapolate_levels(report);
  const double tol_up = tol_or(report, "tol_up", 0.02);
  bool ok = !e.lambda.empty();
  for (std::size_t i = 0; i < e.lambda.size(); ++i) {
    ok = ok && e.lambda[i] <= 1.0 + tol_up;
    if (i > 0) ok = ok && e.lambda[i] > e.lambda[i - 1];
  }
  return ok;
}

}  // namespace hardy
