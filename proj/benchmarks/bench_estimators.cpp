#include <benchmark/benchmark.h>

#include "spatialsign/correlation.hpp"
#include "spatialsign/elliptical.hpp"
#include "spatialsign/location_scale.hpp"

namespace {

using namespace spatialsign;

DataMatrix normal_data(Eigen::Index n, Eigen::Index p) {
  Rng rng(7);
  return sample(EllipticalModel::spherical(Family::normal, p), n, rng);
}

void BM_SpatialMedian(benchmark::State& state) {
  const auto data = normal_data(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(spatial_median(data));
}
BENCHMARK(BM_SpatialMedian)->Args({100, 2})->Args({1000, 2})->Args({100, 10})->Args({1000, 50});

void BM_TwoStage(benchmark::State& state) {
  const auto data = normal_data(state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(sscor_two_stage(data));
}
BENCHMARK(BM_TwoStage)->Arg(100)->Arg(1000);

void BM_MultivariateMatrix(benchmark::State& state) {
  const auto data = normal_data(100, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(multivariate_matrix(data));
}
BENCHMARK(BM_MultivariateMatrix)->Arg(2)->Arg(5)->Arg(10)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
