#include <benchmark/benchmark.h>

#include "dppdisc/discrepancy.hpp"
#include "dppdisc/ensemble.hpp"
#include "dppdisc/rng.hpp"
#include "dppdisc/sampler.hpp"
#include "dppdisc/special_functions.hpp"
#include "dppdisc/variance.hpp"

namespace {

using namespace dppdisc;

void BM_JacobiEval(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  double x = -1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(jacobi_eval(1.0, 0.0, level, x));
    x += 1e-4;
    if (x > 1.0) x = -1.0;
  }
}
BENCHMARK(BM_JacobiEval)->Arg(4)->Arg(16)->Arg(64);

void BM_KernelRadial(benchmark::State& state) {
  const Space space = Space::sphere(2);
  const EnsembleKernel kernel =
      EnsembleKernel::harmonic(space, static_cast<int>(state.range(0)));
  double theta = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel_radial(kernel, theta));
    theta += 1e-4;
    if (theta > space.diameter) theta = 0.0;
  }
}
BENCHMARK(BM_KernelRadial)->Arg(4)->Arg(16);

void BM_SampleHarmonicS2(benchmark::State& state) {
  const EnsembleKernel kernel =
      EnsembleKernel::harmonic(Space::sphere(2), static_cast<int>(state.range(0)));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_dpp(kernel, seed++));
  }
  state.SetItemsProcessed(state.iterations() * kernel.trace);
}
BENCHMARK(BM_SampleHarmonicS2)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_SampleProjectiveCP1(benchmark::State& state) {
  const EnsembleKernel kernel =
      EnsembleKernel::projective(1, static_cast<int>(state.range(0)));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_dpp(kernel, seed++));
  }
  state.SetItemsProcessed(state.iterations() * kernel.trace);
}
BENCHMARK(BM_SampleProjectiveCP1)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_BuildNetS2(benchmark::State& state) {
  const Space space = Space::sphere(2);
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_net(space, n, seed++));
  }
  state.SetLabel("n=" + std::to_string(n));
}
BENCHMARK(BM_BuildNetS2)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_DiscrepancySup(benchmark::State& state) {
  const Space space = Space::sphere(2);
  const EnsembleKernel kernel =
      EnsembleKernel::harmonic(space, static_cast<int>(state.range(0)));
  const BallNet net = build_net(space, 4, 7);
  const SampleSet s = sample_dpp(kernel, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(discrepancy_sup(
        space, std::span<const Point>(s.points.data(), s.points.size()), net));
  }
}
BENCHMARK(BM_DiscrepancySup)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_VarianceBoundHarmonic(benchmark::State& state) {
  const Space space = Space::sphere(2);
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        variance_bound_harmonic(space, level, 1.0471975511965976));
  }
}
BENCHMARK(BM_VarianceBoundHarmonic)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
