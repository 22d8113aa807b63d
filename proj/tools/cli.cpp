#include "cli.hpp"

#include "hardy/config.hpp"
#include "hardy/discrete.hpp"
#include "hardy/examples.hpp"
#include "hardy/hardy.hpp"
#include "hardy/io.hpp"
#include "hardy/parallel.hpp"
#include "hardy/sturm_liouville.hpp"

#include <CLI11.hpp>
#include <Eigen/Core>
#include <boost/version.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <limits>
#include <sstream>

#ifndef HARDY_VERSION
#define HARDY_VERSION "0.0.0"
#endif

namespace hardy::cli {

namespace {

struct Globals {
  std::string config;
  std::string out_dir = "hardy-out";
  double tol = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t seed = 1;
  int threads = 1;
  bool strict = false;
};

struct Outcome {
  int code = kSuccess;
  nlohmann::json verdicts = nlohmann::json::object();
  std::vector<std::string> files;
};

int code_for(const std::string& status, bool strict) {
  if (status == "PASS") return kSuccess;
  if (status == "Inconclusive") return strict ? kNumericalFailure : kSuccess;
  return kVerificationFail;
}

std::string path_in(const Globals& g, const std::string& name) {
  return (std::filesystem::path(g.out_dir) / name).string();
}

void ensure_out_dir(const Globals& g) {
  std::error_code ec;
  std::filesystem::create_directories(g.out_dir, ec);
  if (ec) throw ConfigError("cannot create '" + g.out_dir + "': " + ec.message());
}

void emit(const Globals& g, Outcome& o, const std::string& name, const std::string& content) {
  write_text_file(path_in(g, name), content);
  o.files.push_back(name);
}

ProblemConfig require_config(const Globals& g, const std::string& command) {
  if (g.config.empty()) throw ConfigError(command + " needs --config");
  return load_problem_config(g.config);
}

double a_fraction_from(const ProblemConfig& cfg, double cli_value, bool cli_set) {
  if (cli_set) return cli_value;
  if (cfg.source.contains("a_fraction")) return cfg.source.at("a_fraction").get<double>();
  return 0.5;
}

struct Weighted {
  GreenPipeline pipeline;
  HardyWeightResult weight;
};

Weighted weight_from_config(const ProblemConfig& cfg, double a_fraction, std::uint64_t seed) {
  if (!(a_fraction >= 0.0 && a_fraction <= 1.0)) throw ConfigError("a_fraction must lie in [0, 1]");
  SamplingSpec sampling;
  sampling.seed = seed;
  GreenPipeline p = canonical_pipeline(cfg.domain, cfg.op, sampling);
  const double a_max = p.normalized.sup.a_max;
  HardyWeightResult w = construct_weight(p.inputs, a_fraction * a_max, a_max);
  return {std::move(p), std::move(w)};
}

std::vector<std::string> coordinate_header(int n, std::vector<std::string> tail) {
  std::vector<std::string> h;
  for (int i = 1; i <= n; ++i) h.push_back("x" + std::to_string(i));
  h.insert(h.end(), tail.begin(), tail.end());
  return h;
}

// ---- subcommands ----------------------------------------------------------------

Outcome do_construct(const Globals& g, double a_cli, bool a_set, int samples, std::ostream& out) {
  const ProblemConfig cfg = require_config(g, "construct");
  const double a_fraction = a_fraction_from(cfg, a_cli, a_set);
  const Weighted run = weight_from_config(cfg, a_fraction, g.seed);
  const int n = cfg.domain.dim();
  const Density& density = run.pipeline.normalized.potential.density();
  const auto points = sample_closure(cfg.domain, density.center(), 4.0 * density.radius(), samples, g.seed + 101);
  CsvTable table(coordinate_header(n, {"t", "W", "v"}));
  for (const Vec& x : points) {
    std::vector<double> row(x.data(), x.data() + n);
    row.push_back(run.weight.t(x));
    row.push_back(run.weight.W(x));
    row.push_back(run.weight.v(x));
    table.add_numbers(row);
  }
  ensure_out_dir(g);
  Outcome o;
  emit(g, o, "construct_fields.csv", table.str());
  const auto& params = run.weight.params;
  nlohmann::json summary = {{"schema", "hardy-forge/1"},
                            {"domain", to_string(cfg.domain.kind())},
                            {"n", n},
                            {"operator", cfg.op.preset()},
                            {"a_fraction", a_fraction},
                            {"a", params.a},
                            {"a_max", params.a_max},
                            {"sup_before_normalisation", run.pipeline.normalized.original_sup},
                            {"weight_route", "green_kernel"},
                            {"warnings", run.weight.warnings}};
  emit(g, o, "construct.json", json_text(summary));
  o.verdicts["construct"] = "constructed";
  out << "construct: " << to_string(cfg.domain.kind()) << " n=" << n << " a=" << format_double(params.a)
      << " a_max=" << format_double(params.a_max) << ", " << points.size() << " points\n";
  for (const auto& w : run.weight.warnings) out << "warning: " << w << "\n";
  return o;
}

nlohmann::json divergence_json(const DivergenceVerdict& v) {
  nlohmann::json partials = nlohmann::json::array();
  for (const auto& [t, value] : v.partials) partials.push_back({t, value});
  return {{"side", to_string(v.side)},
          {"class", to_string(v.cls)},
          {"growth_slope", v.growth_slope},
          {"partials", partials},
          {"diagnostic", v.diagnostic}};
}

Outcome do_verify_1d(const Globals& g, const std::string& w, const std::string& psi, double lo, double hi,
                     std::ostream& out) {
  const OneDimWeight w1d = OneDimWeight::from_expressions(w, psi, Interval{lo, hi});
  OptimalityOptions options;
  if (std::isfinite(g.tol)) options.ode_tol = g.tol;
  const OptimalityVerdict v = is_optimal_1d(w1d, options);
  ensure_out_dir(g);
  Outcome o;
  nlohmann::json report = {{"schema", "hardy-forge/1"},
                           {"w", w},
                           {"psi", psi},
                           {"interval", {lo, hi}},
                           {"ode_tol", options.ode_tol},
                           {"ode_residual", v.ode_residual},
                           {"ode_ok", v.ode_ok},
                           {"cond2", {divergence_json(v.cond2[0]), divergence_json(v.cond2[1])}},
                           {"cond3", {divergence_json(v.cond3[0]), divergence_json(v.cond3[1])}},
                           {"overall", to_string(v.overall)},
                           {"diagnostic", v.diagnostic}};
  emit(g, o, "verify_1d.json", json_text(report));
  o.verdicts["overall"] = to_string(v.overall);
  out << "overall: " << to_string(v.overall) << "\n";
  out << "ode residual: " << format_double(v.ode_residual) << "\n";
  for (int s = 0; s < 2; ++s) {
    out << "cond2 " << to_string(v.cond2[s].side) << ": " << to_string(v.cond2[s].cls) << "\n";
    out << "cond3 " << to_string(v.cond3[s].side) << ": " << to_string(v.cond3[s].cls) << "\n";
  }
  switch (v.overall) {
    case Optimality::Optimal:
      o.code = kSuccess;
      break;
    case Optimality::NotOptimal:
      o.code = kVerificationFail;
      break;
    case Optimality::Inconclusive:
      o.code = g.strict ? kNumericalFailure : kSuccess;
      break;
  }
  return o;
}

Outcome do_eig(const Globals& g, double a_cli, bool a_set, int level, double h, double shift, std::ostream& out) {
  const ProblemConfig cfg = require_config(g, "eig");
  const double a_fraction = a_fraction_from(cfg, a_cli, a_set);
  const Weighted run = weight_from_config(cfg, a_fraction, g.seed);
  const TruncatedDomain member = exhaustion_member(cfg.domain, level);
  DiscreteSystem sys = discretize(cfg.op, Grid(GridSpec::for_member(member, h)));
  const ScalarField W = run.weight.W;
  sys.set_weight([&](const Vec& x) { return W(x); });
  EigOptions eo;
  if (std::isfinite(g.tol)) eo.tol = g.tol;
  const EigResult e = principal_eigenvalue(sys, eo);
  const MaxPrincipleReport below = max_principle_probe(sys, e.lambda0 - shift, 20, g.seed);
  const MaxPrincipleReport above = max_principle_probe(sys, e.lambda0 + shift, 20, g.seed);
  const bool consistent = below.pass && !above.pass;
  ensure_out_dir(g);
  Outcome o;
  nlohmann::json report = {{"schema", "hardy-forge/1"},
                           {"domain", to_string(cfg.domain.kind())},
                           {"n", cfg.domain.dim()},
                           {"level", level},
                           {"h", h},
                           {"unknowns", sys.size()},
                           {"a_fraction", a_fraction},
                           {"lambda0", e.lambda0},
                           {"backward_error", e.residual},
                           {"raw_residual", e.raw_residual},
                           {"iterations", e.iterations},
                           {"eigenvector_positive", e.positive},
                           {"max_principle_below", {{"lambda", below.lambda}, {"pass", below.pass}}},
                           {"max_principle_above", {{"lambda", above.lambda}, {"pass", above.pass}}},
                           {"consistent", consistent}};
  emit(g, o, "eig.json", json_text(report));
  o.verdicts["eig"] = consistent && e.positive ? "PASS" : "FAIL";
  out << "lambda0: " << format_double(e.lambda0) << " (backward error " << format_double(e.residual) << ", "
      << sys.size() << " unknowns)\n";
  out << "maximum principle at lambda0 - " << format_double(shift) << ": " << (below.pass ? "holds" : "fails")
      << "; at lambda0 + " << format_double(shift) << ": " << (above.pass ? "holds" : "fails") << "\n";
  o.code = code_for(o.verdicts["eig"].get<std::string>(), g.strict);
  return o;
}

Outcome finish_example(const Globals& g, ExampleResult r, std::ostream& out) {
  ensure_out_dir(g);
  write_example(r, g.out_dir);
  Outcome o;
  o.files = r.files;
  o.verdicts["status"] = r.status();
  for (const auto& l : r.reports) o.verdicts[l.label] = l.report.verdict;
  out << "example " << r.id << ": " << r.status() << "\n";
  for (const auto& [k, v] : r.parameters.items()) {
    if (v.is_number_float()) out << "  " << k << " = " << format_double(v.get<double>()) << "\n";
  }
  for (const auto& c : r.checks) {
    out << "  " << (c.pass ? "ok   " : "MISS ") << c.name << " = " << format_double(c.value) << " " << c.relation
        << " " << format_double(c.limit) << "\n";
  }
  for (const auto& l : r.reports) {
    out << "  " << l.label << ": " << l.report.verdict << " (expected " << l.expected << ")\n";
  }
  for (const auto& w : r.warnings) out << "  warning: " << w << "\n";
  o.code = code_for(r.status(), g.strict);
  return o;
}

Outcome do_example(const Globals& g, const std::string& name, int n, double gamma, double a_fraction,
                   std::ostream& out) {
  ExampleOptions eo;
  eo.seed = g.seed;
  if (name == "half-ball") return finish_example(g, example_half_ball(n, a_fraction, eo), out);
  if (name == "half-space") return finish_example(g, example_half_space(n, a_fraction, eo), out);
  if (name == "ext-ball") return finish_example(g, example_exterior_ball(n, gamma, eo), out);
  if (name == "compare-kl") return finish_example(g, example_compare_kl(n, gamma), out);
  throw ConfigError("unknown example '" + name + "' (half-ball, half-space, ext-ball, compare-kl)");
}

Vec parse_point(const std::string& text, int n) {
  std::vector<double> values;
  std::stringstream s(text);
  std::string cell;
  while (std::getline(s, cell, ',')) {
    try {
      values.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw ConfigError("--source: '" + cell + "' is not a number");
    }
  }
  if (static_cast<int>(values.size()) != n) {
    throw ConfigError("--source needs " + std::to_string(n) + " comma-separated coordinates");
  }
  return Eigen::Map<Vec>(values.data(), n);
}

Outcome do_green_dump(const Globals& g, int points, const std::string& source, std::ostream& out) {
  const ProblemConfig cfg = require_config(g, "green-dump");
  const int n = cfg.domain.dim();
  const GreenKernel kernel = green_mixed(cfg.domain, cfg.op);
  const Density density = canonical_density(cfg.domain);
  const auto xs = sample_closure(cfg.domain, density.center(), 4.0 * density.radius(), points, g.seed + 211);
  CsvTable table(coordinate_header(n, {"G", "grad_norm"}));
  std::string what;
  if (!source.empty()) {
    const Vec y = parse_point(source, n);
    if (!cfg.domain.contains(y)) throw ConfigError("--source must lie inside the domain");
    what = "kernel G(x, y) with y = (" + source + ")";
    for (const Vec& x : xs) {
      if ((x - y).norm() < 1e-12) continue;
      std::vector<double> row(x.data(), x.data() + n);
      row.push_back(kernel(x, y));
      row.push_back(kernel.grad_x(x, y).norm());
      table.add_numbers(row);
    }
  } else {
    const GreenPotential gp(kernel, density);
    what = "potential of the canonical density";
    for (const Vec& x : xs) {
      std::vector<double> row(x.data(), x.data() + n);
      row.push_back(gp.value(x));
      row.push_back(gp.gradient(x).norm());
      table.add_numbers(row);
    }
  }
  ensure_out_dir(g);
  Outcome o;
  emit(g, o, "green_dump.csv", table.str());
  o.verdicts["green-dump"] = "written";
  out << "green-dump: " << kernel.name() << ", " << what << ", " << table.rows() << " rows\n";
  return o;
}

nlohmann::json library_versions() {
  return {{"hardy", HARDY_VERSION},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"boost", BOOST_LIB_VERSION},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hardy-weight construction and verification"};
  app.name("hardy");
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config, "Problem config (JSON)");
  app.add_option("--out-dir", g.out_dir, "Directory for CSV/JSON artifacts")->capture_default_str();
  app.add_option("--tol", g.tol, "Override the main tolerance of the command");
  app.add_option("--seed", g.seed, "Seed for random probe points")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1, 1024))->capture_default_str();
  app.add_flag("--strict", g.strict, "Exit 3 on Inconclusive verdicts");

  double a_fraction = 0.5;
  int samples = 200;
  auto* construct = app.add_subcommand("construct", "Build W, v and t from --config");
  auto* a_opt_c = construct->add_option("--a-fraction", a_fraction, "a / a_max in [0, 1]");
  construct->add_option("--samples", samples, "Output points")->check(CLI::PositiveNumber);

  std::string w_expr, psi_expr;
  double lo = 0.0, hi = std::numeric_limits<double>::infinity();
  auto* verify = app.add_subcommand("verify-1d", "Optimality of a 1D weight for -y''");
  verify->add_option("--w", w_expr, "Weight w(t)")->required();
  verify->add_option("--psi", psi_expr, "Candidate ground state psi(t)")->required();
  verify->add_option("--lo", lo, "Left end of the interval");
  verify->add_option("--hi", hi, "Right end of the interval (default infinity)");

  int level = 2;
  double h = 0.05, shift = 0.1;
  auto* eig = app.add_subcommand("eig", "Principal eigenvalue of (P, W) on an exhaustion member");
  auto* a_opt_e = eig->add_option("--a-fraction", a_fraction, "a / a_max in [0, 1]");
  eig->add_option("--level", level, "Exhaustion level k >= 1")->check(CLI::PositiveNumber);
  eig->add_option("--spacing", h, "Grid spacing h")->check(CLI::PositiveNumber);
  eig->add_option("--shift", shift, "Offset for the maximum-principle consistency check")->check(CLI::PositiveNumber);

  std::string example_name;
  int n = 3;
  double gamma = 1.0;
  auto* example = app.add_subcommand("example", "Reproduce a worked example");
  example->add_option("name", example_name, "half-ball | half-space | ext-ball | compare-kl")->required();
  example->add_option("--n", n, "Dimension");
  example->add_option("--gamma", gamma, "Robin coefficient (ext-ball, compare-kl)");
  example->add_option("--a-fraction", a_fraction, "a / a_max (half-ball, half-space)");

  auto* kl = app.add_subcommand("compare-kl", "Compare with the weight for eps = 1/(2 gamma)");
  kl->add_option("--n", n, "Dimension");
  kl->add_option("--gamma", gamma, "Robin coefficient");

  int points = 100;
  std::string source;
  auto* green = app.add_subcommand("green-dump", "Dump the Green kernel or potential at sample points");
  green->add_option("--points", points, "Number of points")->check(CLI::PositiveNumber);
  green->add_option("--source", source, "Pole y as comma-separated coordinates (default: potential)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }
  set_default_threads(g.threads);

  std::string command;
  for (auto* s : app.get_subcommands()) command = s->get_name();
  Outcome o;
  std::string error;
  try {
    if (construct->parsed()) o = do_construct(g, a_fraction, a_opt_c->count() > 0, samples, out);
    if (verify->parsed()) o = do_verify_1d(g, w_expr, psi_expr, lo, hi, out);
    if (eig->parsed()) o = do_eig(g, a_fraction, a_opt_e->count() > 0, level, h, shift, out);
    if (example->parsed()) o = do_example(g, example_name, n, gamma, a_fraction, out);
    if (kl->parsed()) o = do_example(g, "compare-kl", n, gamma, a_fraction, out);
    if (green->parsed()) o = do_green_dump(g, points, source, out);
  } catch (const NumericalError& e) {
    o.code = kNumericalFailure;
    error = e.what();
  } catch (const std::exception& e) {
    // ConfigError, DomainError, HypothesisError and parse failures of the config
    o.code = kUsageError;
    error = e.what();
  }
  if (!error.empty()) err << "hardy " << command << ": " << error << "\n";

  nlohmann::json manifest = {{"schema", "hardy-forge/1"},
                             {"command", command},
                             {"arguments", args},
                             {"seed", g.seed},
                             {"versions", library_versions()},
                             {"verdicts", o.verdicts},
                             {"files", o.files},
                             {"exit_code", o.code}};
  if (!g.config.empty()) {
    try {
      manifest["config"] = nlohmann::json::parse(read_text_file(g.config));
    } catch (const std::exception&) {
      manifest["config"] = nullptr;
    }
  }
  if (!error.empty()) manifest["error"] = error;
  try {
    ensure_out_dir(g);
    write_text_file(path_in(g, "manifest.json"), json_text(manifest));
  } catch (const std::exception& e) {
    err << "hardy: manifest not written: " << e.what() << "\n";
    if (o.code == kSuccess) o.code = kUsageError;
  }
  return o.code;
}

}  // namespace hardy::cli
