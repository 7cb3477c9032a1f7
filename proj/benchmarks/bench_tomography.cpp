#include <benchmark/benchmark.h>

#include <nlohmann/json.hpp>

#include "abgauge/fields/catalog.hpp"
#include "abgauge/tomography/radon.hpp"

using namespace abgauge;

namespace {

const PotentialConfig& phantom() {
  static const PotentialConfig c = config_from_json(
      {{"dimension", 2},
       {"R", 1.0},
       {"flux_profile", {{0, 0.3, 0.0}, {1, 0.05, -0.02}}},
       {"short_range", {{"kind", "ring_bump"}, {"params", {{"amplitude", 0.4}, {"center", 1.8}, {"width", 0.25}}}}},
       {"scalar", {{"kind", "gaussian_ring"}, {"params", {{"amplitude", 1.0}, {"center", 1.5}, {"width", 0.25}}}}}});
  return c;
}

void BM_LineIntegralScalar(benchmark::State& state) {
  const Line l = Line::from_angle_offset(0.7, 1.6);
  for (auto _ : state) benchmark::DoNotOptimize(line_integral_scalar(phantom(), l));
}
BENCHMARK(BM_LineIntegralScalar);

void BM_LineIntegralVector(benchmark::State& state) {
  const Line l = Line::from_angle_offset(0.7, 1.6);
  for (auto _ : state) benchmark::DoNotOptimize(line_integral_vector(phantom(), l));
}
BENCHMARK(BM_LineIntegralVector);

void BM_ForwardProjectScalar(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ParallelGeometry g{n, 2 * n, 1.0, 3.0};
  for (auto _ : state) benchmark::DoNotOptimize(forward_project_scalar(phantom(), g));
}
BENCHMARK(BM_ForwardProjectScalar)->Arg(45)->Arg(90)->Unit(benchmark::kMillisecond);

void BM_RadonInvert(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Sinogram s = forward_project_scalar(phantom(), ParallelGeometry{n, 2 * n, 1.0, 3.0});
  for (auto _ : state) benchmark::DoNotOptimize(radon_invert_scalar(s));
}
BENCHMARK(BM_RadonInvert)->Arg(90)->Arg(180)->Unit(benchmark::kMillisecond);

void BM_RecoverField(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Sinogram s = forward_project_vector(phantom(), ParallelGeometry{n, 2 * n, 1.0, 3.0});
  for (auto _ : state) benchmark::DoNotOptimize(recover_field_2d(s));
}
BENCHMARK(BM_RecoverField)->Arg(90)->Unit(benchmark::kMillisecond);

}  // namespace
