// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <map>

#include "aerolink/spectral.hpp"
#include "aerolink/trajectory.hpp"

using namespace aerolink;

namespace {

const Scenario& scenario_of(std::int64_t uavs) {
  static std::map<std::int64_t, Scenario> cache;
  auto it = cache.find(uavs);
  if (it == cache.end())
    it = cache.emplace(uavs, build_default_scenario(21, 60.0, {.num_uavs = static_cast<std::size_t>(uavs),
                                                               .num_interferers = 12}))
             .first;
  return it->second;
}

constexpr LaplacianMode kMode = LaplacianMode::CombinatorialWeighted;

void BM_BuildMatricesSerial(benchmark::State& st) {
  const Scenario& s = scenario_of(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(reference::build_matrices(s, FadingModel::unit()));
}

void BM_BuildMatricesParallel(benchmark::State& st) {
  const Scenario& s = scenario_of(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(build_matrices(s, FadingModel::unit()));
}

void BM_AnalyticGradientSerial(benchmark::State& st) {
  const Scenario& s = scenario_of(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(reference::analytic_lambda2_gradient(s, FadingModel::unit(), kMode));
}

void BM_AnalyticGradientParallel(benchmark::State& st) {
  const Scenario& s = scenario_of(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(analytic_lambda2_gradient(s, FadingModel::unit(), kMode));
}

void BM_FdGradientSerial(benchmark::State& st) {
  const Scenario& s = scenario_of(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(reference::fd_lambda2_gradient(s, FadingModel::unit(), kMode, 1e-3));
}

void BM_FdGradientParallel(benchmark::State& st) {
  const Scenario& s = scenario_of(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(fd_lambda2_gradient(s, FadingModel::unit(), kMode, 1e-3));
}

}  // namespace

BENCHMARK(BM_BuildMatricesSerial)->Arg(8)->Arg(30)->Arg(60)->UseRealTime();
BENCHMARK(BM_BuildMatricesParallel)->Arg(8)->Arg(30)->Arg(60)->UseRealTime();
BENCHMARK(BM_AnalyticGradientSerial)->Arg(8)->Arg(30)->Arg(60)->UseRealTime();
BENCHMARK(BM_AnalyticGradientParallel)->Arg(8)->Arg(30)->Arg(60)->UseRealTime();
BENCHMARK(BM_FdGradientSerial)->Arg(8)->Arg(30)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FdGradientParallel)->Arg(8)->Arg(30)->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
