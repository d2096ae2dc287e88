#include <benchmark/benchmark.h>

#include <random>

#include "choquard/bubbles.hpp"
#include "choquard/functional.hpp"
#include "choquard/levels.hpp"

using namespace choquard;

namespace {

GridPtr grid_of(std::int64_t m) { return make_grid(5, 1e-6, 1e4, m); }

RadialField bump(const GridPtr& g) {
  return sample(g, [](double r) {
    const double x = std::log10(r) / 0.5;
    return std::exp(-x * x);
  });
}

void BM_MakeGrid(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(grid_of(state.range(0)));
}
BENCHMARK(BM_MakeGrid)->Arg(512)->Arg(2048);

void BM_BuildKernel(benchmark::State& state) {
  const auto g = grid_of(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_kernel(g, 2.0));
}
BENCHMARK(BM_BuildKernel)->Arg(256)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_ApplyRiesz(benchmark::State& state) {
  const auto g = grid_of(state.range(0));
  const KernelMatrix k = build_kernel(g, 2.0);
  const auto u = bump(g);
  for (auto _ : state) benchmark::DoNotOptimize(apply_riesz(k, u));
}
BENCHMARK(BM_ApplyRiesz)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_NewtonOracle(benchmark::State& state) {
  const auto g = grid_of(state.range(0));
  const auto u = bump(g);
  for (auto _ : state) benchmark::DoNotOptimize(newton_oracle(u));
}
BENCHMARK(BM_NewtonOracle)->Arg(2048);

void BM_EnergyBreakdown(benchmark::State& state) {
  const auto g = grid_of(2048);
  const KernelMatrix k = build_kernel(g, 2.0);
  const ProblemParams params(5, 2.0, 3.0);
  const auto u = bump(g);
  for (auto _ : state) benchmark::DoNotOptimize(energy_breakdown(u, k, params));
}
BENCHMARK(BM_EnergyBreakdown)->Unit(benchmark::kMillisecond);

void BM_Rearrange(benchmark::State& state) {
  const auto g = grid_of(state.range(0));
  std::mt19937_64 rng(5);
  auto u = bump(g);
  for (std::size_t i = 0; i < u.size(); ++i)
    u.values[i] *= 1.0 + 0.3 * std::sin(0.01 * i);
  for (auto _ : state) benchmark::DoNotOptimize(schwarz_rearrange(u));
}
BENCHMARK(BM_Rearrange)->Arg(2048);

void BM_FiberingRoot(benchmark::State& state) {
  const ProblemParams params(5, 2.0, 3.0);
  const auto e = breakdown_from_parts(2.0, 1.3, 0.4, 0.8, params);
  for (auto _ : state) benchmark::DoNotOptimize(fibering_time(e, params));
}
BENCHMARK(BM_FiberingRoot);

void BM_H1Solve(benchmark::State& state) {
  const auto g = grid_of(2048);
  const H1Operator op(g);
  const auto u = bump(g);
  for (auto _ : state) benchmark::DoNotOptimize(op.solve(u.values));
}
BENCHMARK(BM_H1Solve);

}  // namespace

BENCHMARK_MAIN();
