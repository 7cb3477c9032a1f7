#include <benchmark/benchmark.h>

#include <cmath>

#include "abgauge/scattering/channels.hpp"
#include "abgauge/scattering/kernel.hpp"
#include "abgauge/scattering/solver.hpp"

using namespace abgauge;

namespace {

ScatteringKernel make_kernel(int M) {
  const RemainderGrid rem = RemainderGrid::sample(M, [](double a, double b) {
    return Complex(0.04, 0.02) * std::exp(std::cos(a - 1.0) + std::cos(b - 2.0) - 2.0);
  });
  const AngularFunction a0 = AngularFunction::trig(0.0, {}, std::vector<double>{0.2, 0.05}, 8);
  return assemble_kernel(0.3, a0, a0, rem, 1.0);
}

void BM_Channels(benchmark::State& state) {
  const int cutoff = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ab_kernel_channels(0.37, cutoff));
}
BENCHMARK(BM_Channels)->Arg(32)->Arg(256)->Arg(2048);

void BM_ChannelsQuadrature(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ab_kernel_channels_quadrature(0.37, 8));
}
BENCHMARK(BM_ChannelsQuadrature)->Unit(benchmark::kMillisecond);

void BM_Assemble(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(make_kernel(M));
}
BENCHMARK(BM_Assemble)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_KernelDistance(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const ScatteringKernel S1 = make_kernel(M);
  const ScatteringKernel S2 =
      apply_gauge_to_kernel(S1, GaugeElement::planar(1, AngularFunction::trig(0.0, std::vector<double>{0.1}, {}, 8)));
  for (auto _ : state) benchmark::DoNotOptimize(kernel_distance(S1, S2));
}
BENCHMARK(BM_KernelDistance)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Solver(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const ScatteringKernel S1 = make_kernel(M);
  const ScatteringKernel S2 = apply_gauge_to_kernel(
      S1, GaugeElement::planar(2, AngularFunction::trig(0.0, std::vector<double>{0.1, -0.05}, {}, 8)));
  for (auto _ : state) benchmark::DoNotOptimize(gauge_equivalence_solver(S1, S2));
}
BENCHMARK(BM_Solver)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace
