#pragma once

#include "hardy/hardy.hpp"
#include "hardy/io.hpp"
#include "hardy/probes.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace hardy {

/// value <= limit (relation "<=") or value >= limit (relation ">=").
struct ExampleCheck {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  std::string relation;
  bool pass = false;
};

ExampleCheck check_le(std::string name, double value, double limit);
ExampleCheck check_ge(std::string name, double value, double limit);

struct LabeledReport {
  std::string label;
  VerificationReport report;
  std::string expected;  // verdict that counts as success
};

struct ExampleResult {
  std::string id;
  nlohmann::json parameters;
  std::string weight_route;  // "green_kernel" or "closed_form_supersolution"
  std::vector<std::string> fields;
  std::vector<ExampleCheck> checks;
  std::vector<LabeledReport> reports;
  std::vector<std::string> files;
  std::vector<std::string> warnings;
  std::vector<CsvTable> tables;          // emitted field tables, one per entry of table_names
  std::vector<std::string> table_names;

  /// "PASS" when every check passes and every report has its expected verdict,
  /// "Inconclusive" when the only misses are Inconclusive reports, "FAIL" otherwise.
  std::string status() const;
  nlohmann::json to_json() const;
};

struct ExampleOptions {
  std::uint64_t seed = 1;
  bool run_probes = true;
};

/// Half ball B_1(0) ∩ {x_n > 0}: Neumann on the flat disc, Dirichlet on the cap,
/// images kernel, canonical density, a = a_fraction a_max.
ExampleResult example_half_ball(int n, double a_fraction, const ExampleOptions& options = {});

/// Half space with the same pipeline; W |x|^2 is compared with (n-2)^2/4 along three rays.
ExampleResult example_half_space(int n, double a_fraction = 0.5, const ExampleOptions& options = {});

/// Closed-form data on the exterior of the unit ball with B u = grad u . n + gamma u:
/// eps = 1/(n-1+2 gamma), v = sqrt((r-1+eps) r^{1-n}),
/// W = (n-1)(n-3)/(4r^2) + 1/(4(r-1+eps)^2).
double exterior_eps(int n, double gamma);
double exterior_v(int n, double eps, double r);
double exterior_v_prime(int n, double eps, double r);
double exterior_W(int n, double eps, double r);

ExampleResult example_exterior_ball(int n, double gamma, const ExampleOptions& options = {});

struct KlComparison {
  int n = 3;
  double gamma = 1.0;
  double eps_ours = 0.0;
  double eps_kl = 0.0;
  double ratio_at_one = 0.0;
  double expected_ratio_at_one = 0.0;
  double ratio_at_far = 0.0;  // at the last grid radius
  bool dominates = false;     // W_ours > W_KL at every grid radius
  CsvTable table{{"r", "W_ours", "W_KL", "ratio"}};
};

/// W_ours with eps = 1/(n-1+2 gamma) against the same formula with eps = 1/(2 gamma)
/// on `points` radii log-spaced in [1, r_max]. ConfigError for n < 3 or gamma <= 0.
KlComparison compare_kl_weight(int n, double gamma, int points = 200, double r_max = 1e4);

ExampleResult example_compare_kl(int n, double gamma);

/// Writes <id>.json, one CSV per table and one levels CSV per report into `dir`
/// and records the paths in result.files.
void write_example(ExampleResult& result, const std::string& dir);

}  // namespace hardy
