#include "hardy/examples.hpp"
#include "hardy/parallel.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace hardy;

namespace {

const LabeledReport& find_report(const ExampleResult& r, const std::string& label) {
  for (const auto& l : r.reports) {
    if (l.label == label) return l;
  }
  throw std::runtime_error("no report " + label);
}

std::string temp_dir(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("hardy_test_" + name);
  std::filesystem::remove_all(p);
  return p.string();
}

}  // namespace

TEST(Io, FormatDoubleUsesSeventeenDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(0.25), "0.25");
  EXPECT_EQ(format_double(-3.0), "-3");
  EXPECT_EQ(format_double(1.0 / 3.0), "0.33333333333333331");
  EXPECT_EQ(format_double(1e-300), "1e-300");
}

TEST(Io, CsvRejectsRaggedRows) {
  CsvTable t({"a", "b"});
  EXPECT_THROW(t.add_row({"1"}), ConfigError);
  t.add_numbers({1.0, 2.5});
  EXPECT_EQ(t.str(), "a,b\n1,2.5\n");
}

TEST(Io, LevelsRoundTrip) {
  VerificationReport rep;
  rep.value_name = "lambda0";
  rep.levels = {{1, 10.0, 0.01, 1.2345678901234567, 1e-12}, {2, 100.0, 0.005, 1.1, 3e-11}};
  const auto back = parse_levels_csv(levels_table(rep).str());
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].value, rep.levels[0].value);
  EXPECT_EQ(back[1].residual, rep.levels[1].residual);
  EXPECT_THROW(parse_levels_csv("x,y\n1,2\n"), ConfigError);
}

TEST(ExteriorBall, ClosedForms) {
  EXPECT_EQ(exterior_eps(3, 1.0), 0.25);
  EXPECT_THROW(exterior_eps(3, -1.0), ConfigError);
  EXPECT_THROW(exterior_eps(4, -1.5), ConfigError);
  EXPECT_NO_THROW(exterior_eps(4, -1.4));
  for (double r : {1.0, 1.5, 10.0, 1e4}) {
    EXPECT_NEAR(exterior_W(3, 0.25, r), 1.0 / (4.0 * (r - 0.75) * (r - 0.75)), 1e-15 * exterior_W(3, 0.25, r));
  }
  // Robin condition at r = 1: -v' + gamma v = 0
  for (int n : {3, 4, 6}) {
    for (double gamma : {0.5, 1.0, 3.0}) {
      const double eps = exterior_eps(n, gamma);
      EXPECT_NEAR(-exterior_v_prime(n, eps, 1.0) + gamma * exterior_v(n, eps, 1.0), 0.0, 1e-14);
    }
  }
}

TEST(ExteriorBall, ExampleReproducesEveryCheck) {
  const ExampleResult r = example_exterior_ball(3, 1.0);
  EXPECT_EQ(r.status(), "PASS");
  EXPECT_EQ(r.parameters.at("eps_gamma").get<double>(), 0.25);
  EXPECT_EQ(r.weight_route, "closed_form_supersolution");
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << " " << c.value;
  for (const auto& l : r.reports) EXPECT_EQ(redecide(l.report), l.report.verdict) << l.label;
  const auto& opt = find_report(r, "lambda0_robin_annuli").report;
  EXPECT_NEAR(opt.fit.at("limit"), 1.0, 0.05);
}

TEST(ExteriorBall, OtherDimensions) {
  for (int n : {4, 5}) {
    const ExampleResult r = example_exterior_ball(n, 0.5);
    EXPECT_EQ(r.status(), "PASS") << n;
  }
}

TEST(CompareKl, RatioAtTheSphere) {
  const KlComparison c = compare_kl_weight(3, 1.0);
  EXPECT_EQ(c.eps_ours, 0.25);
  EXPECT_EQ(c.eps_kl, 0.5);
  EXPECT_NEAR(c.ratio_at_one, 4.0, 1e-12);
  EXPECT_TRUE(c.dominates);
  EXPECT_NEAR(c.ratio_at_far, 1.0, 1e-3);
  for (double gamma : {0.25, 2.0, 7.5}) {
    const KlComparison d = compare_kl_weight(3, gamma);
    const double expected = std::pow((2.0 + 2.0 * gamma) / (2.0 * gamma), 2);
    EXPECT_NEAR(d.ratio_at_one, expected, 1e-12 * expected);
  }
  EXPECT_THROW(compare_kl_weight(2, 1.0), ConfigError);
  EXPECT_THROW(compare_kl_weight(3, 0.0), ConfigError);
}

TEST(HalfSpace, AsymptoticConstant) {
  const ExampleResult r = example_half_space(3);
  EXPECT_EQ(r.status(), "PASS");
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(r.parameters.at("fitted_limit_ray_" + std::to_string(i)).get<double>(), 0.25, 1e-3);
  }
}

TEST(HalfBall, CapRateAndProbes) {
  const ExampleResult r = example_half_ball(3, 0.5);
  EXPECT_EQ(r.status(), "PASS");
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << " " << c.value;
  EXPECT_EQ(find_report(r, "truncations").report.verdict, "PASS");
  EXPECT_THROW(example_half_ball(3, 1.5), ConfigError);
  EXPECT_THROW(example_half_ball(2, 0.5), ConfigError);
}

TEST(HalfBall, ClassicalBranch) {
  ExampleOptions o;
  o.run_probes = false;
  const ExampleResult r = example_half_ball(3, 0.0, o);
  bool found = false;
  for (const auto& c : r.checks) {
    if (c.name == "classical_weight_rel_diff") {
      found = true;
      EXPECT_LE(c.value, 1e-12);
    }
  }
  EXPECT_TRUE(found);
}

TEST(Output, VerdictsReproduceFromEmittedCsv) {
  ExampleResult r = example_exterior_ball(3, 1.0);
  const std::string dir = temp_dir("csv");
  write_example(r, dir);
  for (const auto& l : r.reports) {
    VerificationReport copy = l.report;
    copy.levels = parse_levels_csv(read_text_file(dir + "/" + r.id + "_" + l.label + "_levels.csv"));
    EXPECT_EQ(redecide(copy), l.report.verdict) << l.label;
  }
  std::filesystem::remove_all(dir);
}

TEST(Output, ByteIdenticalAcrossRunsAndThreads) {
  const int saved = default_threads();
  auto emit = [](const std::string& name, int threads) {
    set_default_threads(threads);
    ExampleResult r = example_half_space(3);
    const std::string dir = temp_dir(name);
    write_example(r, dir);
    std::vector<std::string> contents;
    for (const auto& f : r.files) contents.push_back(read_text_file(dir + "/" + f));
    std::filesystem::remove_all(dir);
    return contents;
  };
  const auto a = emit("bytes_a", 1);
  const auto b = emit("bytes_b", 1);
  const auto c = emit("bytes_c", 3);
  set_default_threads(saved);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
}
