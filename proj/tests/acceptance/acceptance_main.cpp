// Acceptance run: one PASS/FAIL line per criterion, followed by the key values.
// Exit status 0 iff every criterion passes.

#include "hardy/examples.hpp"
#include "hardy/hardy.hpp"
#include "hardy/probes.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace hardy;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double time_limit;  // seconds
  std::function<Outcome()> run;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

const GreenPipeline& punctured_pipeline() {
  static const GreenPipeline p =
      canonical_pipeline(DomainSpec::punctured_space(3), OperatorSpec::laplacian_neumann(3));
  return p;
}

double find_check(const ExampleResult& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return c.value;
  }
  throw std::runtime_error("missing check " + name);
}

const VerificationReport& find_report(const ExampleResult& r, const std::string& label) {
  for (const auto& l : r.reports) {
    if (l.label == label) return l.report;
  }
  throw std::runtime_error("missing report " + label);
}

// ---- 1 -------------------------------------------------------------------------

Outcome classical_constant() {
  const Vec origin = Vec::Zero(3);
  const ScalarField G([origin](const Vec& x) { return green_free(3, x, origin); },
                      [origin](const Vec& x) { return green_free_grad(3, x, origin); });
  std::mt19937_64 rng(20);
  std::uniform_real_distribution<double> coord(-4.0, 4.0);
  std::vector<Vec> pts;
  while (pts.size() < 1000) {
    Vec x(3);
    for (int j = 0; j < 3; ++j) x(j) = coord(rng);
    if (x.norm() > 1e-3) pts.push_back(x);
  }
  const WeightInputs in{G, ScalarField::constant(1.0), OperatorSpec::laplacian_neumann(3), {}, pts};
  // The pure kernel has sup G/u = infinity; a = 0 does not use a_max.
  const auto res = construct_weight(in, 0.0, 2.0);
  double worst = 0.0;
  for (const Vec& x : pts) worst = std::max(worst, std::abs(res.W(x) * x.squaredNorm() - 0.25));
  return {worst <= 1e-10, "max |W|x|^2 - 0.25| = " + num(worst) + " over 1000 points"};
}

// ---- 2 -------------------------------------------------------------------------

Outcome half_space_asymptotics() {
  ExampleOptions o;
  o.run_probes = false;
  bool pass = true;
  std::ostringstream d;
  for (int n : {3, 4}) {
    const ExampleResult r = example_half_space(n, 0.5, o);
    const double target = 0.25 * (n - 2.0) * (n - 2.0);
    double worst = 0.0;
    for (const auto& c : r.checks) {
      if (c.name.rfind("ray_", 0) != 0) continue;
      pass = pass && c.pass;
      worst = std::max(worst, c.value);
    }
    d << "n=" << n << " max rel dev " << num(worst) << " (target " << num(target) << "), limits";
    for (int i = 0; i < 3; ++i) {
      const double lim = r.parameters.at("fitted_limit_ray_" + std::to_string(i)).get<double>();
      pass = pass && std::abs(lim - target) <= 0.05 * target;
      d << " " << num(lim);
    }
    d << "; ";
  }
  return {pass, d.str()};
}

// ---- 3 -------------------------------------------------------------------------

Outcome exterior_exactness() {
  ExampleOptions o;
  o.run_probes = false;
  const ExampleResult r = example_exterior_ball(3, 1.0, o);
  const double eps = r.parameters.at("eps_gamma").get<double>();
  const double pde = find_check(r, "pde_residual");
  const double robin = find_check(r, "robin_residual");
  const bool pass = eps == 0.25 && pde <= 1e-8 && robin <= 1e-10;
  return {pass, "eps = " + num(eps) + ", pde residual " + num(pde) + ", robin residual " + num(robin)};
}

// ---- 4 -------------------------------------------------------------------------

Outcome kl_improvement() {
  const KlComparison c = compare_kl_weight(3, 1.0);
  const double expected = std::pow((3.0 - 1.0 + 2.0) / 2.0, 2);
  const double err = std::abs(c.ratio_at_one - expected);
  return {err <= 1e-12, "W_ours/W_KL at r=1 = " + num(c.ratio_at_one) + ", |diff from 4| = " + num(err)};
}

// ---- 5 -------------------------------------------------------------------------

Outcome optimality_at_infinity() {
  const auto& p = punctured_pipeline();
  const double a_max = p.normalized.sup.a_max;
  bool pass = true;
  std::ostringstream d;
  for (double a : {0.0, 0.5 * a_max}) {
    const auto res = construct_weight(p.inputs, a, a_max);
    const auto rep = optimality_at_infinity_radial(res.W, 3);
    bool below = true;
    for (const auto& l : rep.levels) below = below && l.value <= 1.02;
    d << "a=" << num(a) << " extrapolated lambda0";
    for (int i = 1; i <= 3; ++i) {
      const double e = rep.fit.at("lambda0_extrapolated_" + std::to_string(i));
      below = below && e <= 1.02;
      d << " " << num(e);
    }
    const double limit = rep.fit.at("limit");
    const bool near = std::abs(limit - 1.0) <= 0.05;
    d << ", limit " << num(limit) << ", all <= 1.02: " << (below ? "yes" : "no")
      << ", probe verdict " << rep.verdict << "; ";
    pass = pass && below && near;
  }
  return {pass, d.str()};
}

// ---- 6 -------------------------------------------------------------------------

Outcome null_criticality() {
  const auto& p = punctured_pipeline();
  const double a_max = p.normalized.sup.a_max;
  const double mass = p.normalized.potential.density().mass();
  bool pass = true;
  std::ostringstream d;
  for (double a : {0.0, 0.5 * a_max}) {
    const auto res = construct_weight(p.inputs, a, a_max);
    NullCriticalitySpec spec;
    spec.expected_slope = 0.5 * mass * std::log(10.0);
    const auto rep = null_criticality_radial(res.v, res.W, res.t, 3, spec);
    const double rel = rep.fit.at("slope_rel_error");
    pass = pass && rep.verdict == "Divergent" && rel <= 0.1 && rep.levels.size() >= 4;
    const ScalarField damped([res](const Vec& x) { return res.W(x) * std::sqrt(res.t(x)); });
    const auto control = null_criticality_radial(res.v, damped, res.t, 3, spec);
    pass = pass && control.verdict == "Convergent";
    d << "punctured a=" << num(a) << " " << rep.verdict << " slope rel err " << num(rel)
      << ", control " << control.verdict << "; ";
  }
  const int n = 3;
  const double eps = exterior_eps(n, 1.0);
  NullCriticalitySpec spec;
  spec.expected_slope = unit_sphere_area(n) * 0.25 * (n - 2.0) * (n - 2.0) * std::log(10.0);
  const auto shells = null_criticality_shells([=](double r) { return exterior_v(n, eps, r); },
                                              [=](double r) { return exterior_W(n, eps, r); }, n, 1.0, spec);
  const double rel = shells.fit.at("slope_rel_error");
  pass = pass && shells.verdict == "Divergent" && rel <= 0.1;
  // G/u decays like 1/r here, so t^{0.5} becomes r^{-0.5}.
  const auto control = null_criticality_shells(
      [=](double r) { return exterior_v(n, eps, r); },
      [=](double r) { return exterior_W(n, eps, r) * std::pow(r, -0.5); }, n, 1.0, spec);
  pass = pass && control.verdict == "Convergent";
  d << "exterior ball " << shells.verdict << " slope rel err " << num(rel) << ", control " << control.verdict;
  return {pass, d.str()};
}

// ---- 7 -------------------------------------------------------------------------

Outcome one_dim_verdicts() {
  OneDimWeight classical{[](double t) { return 0.25 / (t * t); }, [](double t) { return std::sqrt(t); }, {}};
  OneDimWeight family{[](double t) { return std::pow(2.0 * t - t * t, -2.0); },
                      [](double t) { return std::sqrt(2.0 * t - t * t); }, {0.0, 2.0}};
  OneDimWeight euler{[](double t) { return 3.0 / (16.0 * t * t); }, [](double t) { return std::pow(t, 0.25); }, {}};
  const auto a = is_optimal_1d(classical);
  const auto b = is_optimal_1d(family);
  const auto c = is_optimal_1d(euler);
  const bool pass = a.overall == Optimality::Optimal && b.overall == Optimality::Optimal &&
                    c.overall == Optimality::NotOptimal && c.cond2[0].cls == DivergenceClass::Convergent;
  return {pass, "classical " + to_string(a.overall) + ", family a=1 " + to_string(b.overall) + ", euler " +
                    to_string(c.overall) + " (cond2 at zero " + to_string(c.cond2[0].cls) + ")"};
}

// ---- 8 -------------------------------------------------------------------------

Outcome u_xi_suite() {
  int passed = 0;
  int total = 0;
  double worst_ode = 0.0;
  double worst_zero = 0.0;
  double worst_env = 0.0;
  for (double xi : {0.5, 1.0, 2.0}) {
    for (double M : {1.0, 3.0}) {
      for (double a : {0.5, 1.0}) {
        const UXiReport r = u_xi_checks(xi, M, a);
        ++total;
        if (r.passed()) ++passed;
        worst_ode = std::max(worst_ode, r.ode_residual);
        worst_zero = std::max(worst_zero, r.dirichlet_residual);
        worst_env = std::max(worst_env, r.envelope_violation);
      }
    }
  }
  return {passed == total, std::to_string(passed) + "/" + std::to_string(total) + " pass, max ode residual " +
                               num(worst_ode) + ", max zero residual " + num(worst_zero) +
                               ", max envelope violation " + num(worst_env)};
}

// ---- 9 -------------------------------------------------------------------------

bool strictly_decreasing_to(const VerificationReport& rep, double final_max) {
  for (std::size_t i = 1; i < rep.levels.size(); ++i) {
    if (!(rep.levels[i].value < rep.levels[i - 1].value)) return false;
  }
  return !rep.levels.empty() && rep.levels.back().value <= final_max;
}

Outcome khasminskii() {
  const auto& p = punctured_pipeline();
  const double a_max = p.normalized.sup.a_max;
  const auto res = construct_weight(p.inputs, 0.5 * a_max, a_max);
  KhasminskiiSpec ks;
  ks.K_max = 12;
  const auto ours = khasminskii_probe(res.v, res.h, DomainSpec::punctured_space(3), Vec::Zero(3), ks);

  const int n = 3;
  const double eps = exterior_eps(n, 1.0);
  // v_gamma / w_gamma with the common factor r^{(1-n)/2} removed.
  const ScalarField v_hat([=](const Vec& x) { return std::sqrt(x.norm() - 1.0 + eps); });
  const ScalarField w_hat([=](const Vec& x) {
    const double s = x.norm() - 1.0 + eps;
    return std::sqrt(s) * std::log(s);
  });
  const auto ext = khasminskii_probe(v_hat, w_hat, DomainSpec::exterior_ball(n), Vec::Zero(n), ks);

  const bool pass = strictly_decreasing_to(ours, 1e-2) && strictly_decreasing_to(ext, 1e-2);
  return {pass, "(v, h) " + ours.verdict + " final " + num(ours.levels.back().value) + "; (v_gamma, w_gamma) " +
                    ext.verdict + " final " + num(ext.levels.back().value)};
}

// ---- 10 ------------------------------------------------------------------------

Outcome discrete_consistency() {
  std::ostringstream d;
  bool pass = true;

  // Images kernel against the discrete solve on a box resting on the Neumann plane.
  {
    const int n = 3;
    Vec lo(3), hi(3), y(3);
    lo << -0.5, -0.5, 0.0;
    hi << 0.5, 0.5, 0.5;
    y << 0.0, 0.0, 0.25;
    const double h = 1.0 / 64.0;
    const DomainSpec half = DomainSpec::half_space(n);
    const auto exact = [&](const Vec& x) { return green_mixed(half, x, y); };
    const Grid grid(GridSpec{lo, hi, h, true, {}});
    const DiscreteSystem sys = discretize(OperatorSpec::laplacian_neumann(n), grid);
    const Vec g = discrete_green(sys, grid.unknown_at(y), exact);
    double worst = 0.0;
    for (std::size_t i = 0; i < sys.size(); ++i) {
      if ((sys.points[i] - y).norm() < 5.0 * h) continue;
      const double e = exact(sys.points[i]);
      worst = std::max(worst, std::abs(g(static_cast<Eigen::Index>(i)) - e) / e);
    }
    pass = pass && worst <= 0.02;
    d << "green max rel err " << num(worst) << " over " << sys.size() << " unknowns; ";
  }

  // Flux of the normalized potentials through two level sets.
  {
    const auto op = OperatorSpec::laplacian_neumann(3);
    const auto& p = punctured_pipeline();
    const auto fp = flux_constancy_check(p.inputs.G_phi, op, DomainSpec::punctured_space(3),
                                         p.normalized.potential.density(), 0.01, 0.05);
    const GreenPipeline q = canonical_pipeline(DomainSpec::half_space(3), op);
    const auto fq = flux_constancy_check(q.inputs.G_phi, op, DomainSpec::half_space(3),
                                         q.normalized.potential.density(), 0.01, 0.05);
    pass = pass && fp.relative_difference <= 1e-3 && fq.relative_difference <= 1e-3;
    d << "flux rel diff punctured " << num(fp.relative_difference) << ", half space "
      << num(fq.relative_difference) << "; ";
  }

  // lambda_0 - 0.1 keeps the maximum principle, lambda_0 + 0.1 breaks it.
  {
    const int n = 3;
    const DomainSpec domain = DomainSpec::half_ball(n);
    const OperatorSpec op = OperatorSpec::laplacian_neumann(n);
    const GreenPipeline q = canonical_pipeline(domain, op);
    const auto res = construct_weight(q.inputs, 0.5 * q.normalized.sup.a_max, q.normalized.sup.a_max);
    TruncationSpec ts;
    ts.box_lo = Vec(3);
    ts.box_hi = Vec(3);
    ts.box_lo << -1.0, -1.0, 0.0;
    ts.box_hi << 1.0, 1.0, 1.0;
    ts.h = 1.0 / 16.0;
    const std::function<double(const Vec&)> W = [&](const Vec& x) { return res.W(x); };
    d << "lambda0 on truncations";
    for (int level : ts.levels) {
      DiscreteSystem sys = truncation_system(op, domain, level, ts);
      sys.set_weight(W);
      const double l0 = principal_eigenvalue(sys).lambda0;
      const bool below = max_principle_probe(sys, l0 - 0.1).pass;
      const bool above = max_principle_probe(sys, l0 + 0.1).pass;
      pass = pass && below && !above;
      d << " " << num(l0) << (below && !above ? " (ok)" : " (mismatch)");
    }
  }
  return {pass, d.str()};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "classical constant recovery", 1.0, classical_constant},
      {2, "half-space asymptotics", 30.0, half_space_asymptotics},
      {3, "exterior-ball exactness", 5.0, exterior_exactness},
      {4, "improvement over the Robin comparison weight", 1.0, kl_improvement},
      {5, "optimality at infinity", 300.0, optimality_at_infinity},
      {6, "null-criticality", 120.0, null_criticality},
      {7, "1D optimality verdicts", 10.0, one_dim_verdicts},
      {8, "u_xi property suite", 5.0, u_xi_suite},
      {9, "Khas'minskii probes", 30.0, khasminskii},
      {10, "discrete consistency", 180.0, discrete_consistency},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.time_limit;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("criterion %d: %s  %s [%.2f s of %.0f s]\n    %s\n", c.id, pass ? "PASS" : "FAIL", c.title.c_str(),
                secs, c.time_limit, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
