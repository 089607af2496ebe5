#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fracpm/evolution.hpp"
#include "fracpm/linear.hpp"
#include "fracpm/singular_field.hpp"
#include "fracpm/spectral.hpp"

using namespace fracpm;

namespace {

ScalarField noise(const PeriodicGrid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(g.size());
  for (auto& x : v) x = u(rng);
  return ScalarField(g, std::move(v));
}

void BM_FracDerivative1D(benchmark::State& state) {
  const PeriodicGrid g(1, static_cast<std::size_t>(state.range(0)));
  const auto u = noise(g, 1);
  const FracParams p(0.4);
  for (auto _ : state) benchmark::DoNotOptimize(frac_derivative_1d(u, p));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FracDerivative1D)->RangeMultiplier(4)->Range(256, 1 << 16)->Complexity(benchmark::oNLogN);

void BM_FracGradient2D(benchmark::State& state) {
  const PeriodicGrid g(2, static_cast<std::size_t>(state.range(0)));
  const auto u = noise(g, 2);
  const FracParams p(0.4);
  for (auto _ : state) benchmark::DoNotOptimize(frac_gradient_2d(u, p));
}
BENCHMARK(BM_FracGradient2D)->Arg(64)->Arg(128)->Arg(256);

// point evaluation of the 2D step-datum oracle near and away from the circle
void BM_SingularField2DPoint(benchmark::State& state) {
  const SingularField S(JumpSet::centered_disc(0.5), FracParams(0.3));
  const double d = std::pow(10.0, -static_cast<double>(state.range(0)));
  const Point x{0.5 - d, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(S(x));
}
BENCHMARK(BM_SingularField2DPoint)->DenseRange(1, 4);

void BM_StepperAdvance(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const PeriodicGrid g(dim, static_cast<std::size_t>(state.range(1)));
  const FracParams p(0.6);
  const auto js = dim == 1 ? JumpSet::centered_interval() : JumpSet::centered_disc(0.5);
  auto sample = precompute_singular_field(js, p, g);
  SolverConfig cfg;
  cfg.dt = 1e-4;
  Stepper stepper(sample.S, p, cfg);
  std::vector<double> w(g.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = 1e-3 * std::sin(std::numbers::pi * g.node(i)[0]);
  for (auto _ : state) {
    auto st = stepper.advance(w);
    benchmark::DoNotOptimize(st);
  }
}
BENCHMARK(BM_StepperAdvance)->Args({1, 512})->Args({1, 4096})->Args({2, 64})->Args({2, 128});

void BM_Assemble(benchmark::State& state) {
  const PeriodicGrid g(2, static_cast<std::size_t>(state.range(0)));
  const auto js = JumpSet::centered_disc(0.5);
  const FracParams p(0.7);
  for (auto _ : state) benchmark::DoNotOptimize(assemble(js, p, g));
}
BENCHMARK(BM_Assemble)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SpectrumDeflated(benchmark::State& state) {
  const PeriodicGrid g(1, static_cast<std::size_t>(state.range(0)));
  const auto A = assemble(JumpSet::centered_interval(), FracParams(0.8), g);
  const auto path = state.range(1) == 0 ? EigenPath::Dense : EigenPath::Sparse;
  for (auto _ : state) benchmark::DoNotOptimize(spectrum_deflated(A, path));
}
BENCHMARK(BM_SpectrumDeflated)->Args({256, 0})->Args({512, 0})->Args({512, 1})->Args({2048, 1})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
