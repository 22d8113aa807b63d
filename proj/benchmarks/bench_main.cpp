#include "hardy/hardy.hpp"
#include "hardy/probes.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

using namespace hardy;

namespace {

SamplingSpec quick_sampling() {
  SamplingSpec s;
  s.samples = 4000;
  s.refined_samples = 4000;
  return s;
}

const GreenPipeline& pipeline(bool half) {
  static const GreenPipeline punctured = canonical_pipeline(
      DomainSpec::punctured_space(3), OperatorSpec::laplacian_neumann(3), quick_sampling());
  static const GreenPipeline half_space = canonical_pipeline(
      DomainSpec::half_space(3), OperatorSpec::laplacian_neumann(3), quick_sampling());
  return half ? half_space : punctured;
}

std::vector<Vec> points(int count) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> c(-3.0, 3.0);
  std::vector<Vec> pts;
  for (int i = 0; i < count; ++i) {
    Vec x(3);
    x << c(rng), c(rng), std::abs(c(rng)) + 0.1;
    pts.push_back(x);
  }
  return pts;
}

void BM_GreenPotential(benchmark::State& state) {
  const auto& p = pipeline(state.range(0) == 1);
  const auto pts = points(64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(p.inputs.G_phi(pts[i++ % pts.size()]));
}
BENCHMARK(BM_GreenPotential)->Arg(0)->Arg(1);

void BM_HardyWeight(benchmark::State& state) {
  const auto& p = pipeline(state.range(0) == 1);
  const auto res = construct_weight(p.inputs, 0.5 * p.normalized.sup.a_max, p.normalized.sup.a_max);
  const auto pts = points(64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(res.W(pts[i++ % pts.size()]));
}
BENCHMARK(BM_HardyWeight)->Arg(0)->Arg(1);

void BM_Discretize(benchmark::State& state) {
  const double h = 1.0 / static_cast<double>(state.range(0));
  Vec lo(3), hi(3);
  lo << -0.5, -0.5, 0.0;
  hi << 0.5, 0.5, 0.5;
  const Grid grid(GridSpec{lo, hi, h, true, {}});
  for (auto _ : state) benchmark::DoNotOptimize(discretize(OperatorSpec::laplacian_neumann(3), grid));
  state.counters["unknowns"] = static_cast<double>(grid.unknown_count());
}
BENCHMARK(BM_Discretize)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_PrincipalEigenvalue(benchmark::State& state) {
  RadialGridSpec spec;
  spec.r_in = 2.0;
  spec.r_out = 1000.0;
  spec.cells = static_cast<int>(state.range(0));
  auto sys = discretize_radial(spec);
  sys.set_weight([](const Vec& x) { return 0.25 / x.squaredNorm(); });
  for (auto _ : state) benchmark::DoNotOptimize(principal_eigenvalue(sys).lambda0);
}
BENCHMARK(BM_PrincipalEigenvalue)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_IsOptimal1d(benchmark::State& state) {
  const OneDimWeight w1d{[](double t) { return 0.25 / (t * t); }, [](double t) { return std::sqrt(t); }, {}};
  for (auto _ : state) benchmark::DoNotOptimize(is_optimal_1d(w1d).overall);
}
BENCHMARK(BM_IsOptimal1d)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
