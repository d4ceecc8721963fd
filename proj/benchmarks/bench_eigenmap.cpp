#include <benchmark/benchmark.h>

#include "spatialsign/eigenmap.hpp"

namespace {

using namespace spatialsign;

ShapeSpectrum equidistant(Eigen::Index p) {
  Vector v(p);
  for (Eigen::Index i = 0; i < p; ++i) v(i) = static_cast<double>(p - i);
  return ShapeSpectrum::normalized(v);
}

void BM_Forward(benchmark::State& state) {
  const auto lambda = equidistant(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(forward(lambda));
}
BENCHMARK(BM_Forward)->Arg(2)->Arg(10)->Arg(50)->Arg(101);

void BM_Inverse(benchmark::State& state) {
  const auto delta = forward(equidistant(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(inverse(delta));
}
BENCHMARK(BM_Inverse)->Arg(2)->Arg(10)->Arg(50);

}  // namespace
