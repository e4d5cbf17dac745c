#include <benchmark/benchmark.h>

#include "tempodeg/curriculum.hpp"
#include "tempodeg/degradations.hpp"
#include "tempodeg/metrics.hpp"
#include "tempodeg/resample.hpp"
#include "tempodeg/synthetic.hpp"

using namespace tempodeg;

namespace {

const Clip& sample_clip() {
  static const Clip clip = make_synthetic_clip(ClipShape{8, 360, 640}, 7);
  return clip;
}

Trajectory constant(std::size_t n, float v) { return Trajectory{std::vector<float>(n, v)}; }

void BM_MotionBlur(benchmark::State& state) {
  const Clip& c = sample_clip();
  const auto length = static_cast<float>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(motion_blur(c, constant(c.size(), 30.0f), constant(c.size(), length)));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(c.size()));
}
BENCHMARK(BM_MotionBlur)->Arg(3)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_GridWarp(benchmark::State& state) {
  const Clip& c = sample_clip();
  const ClipShape shape = shape_of(c);
  FieldSpec spec;
  spec.grid_h = spec.grid_w = static_cast<std::size_t>(state.range(0));
  spec.amplitude = 0.2f;
  const auto fields =
      gen_field_seq(derive_stream(1, 2, "warp_field"), spec, shape.frames, shape.height, shape.width);
  for (auto _ : state) benchmark::DoNotOptimize(grid_warp(c, fields));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(c.size()));
}
BENCHMARK(BM_GridWarp)->Arg(4)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_SpatialDegrade(benchmark::State& state) {
  const Frame& f = sample_clip()[0];
  const double factor = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(spatial_degrade(f, factor));
}
BENCHMARK(BM_SpatialDegrade)->Arg(125)->Arg(250)->Unit(benchmark::kMillisecond);

void BM_Ssim(benchmark::State& state) {
  const Clip& c = sample_clip();
  for (auto _ : state) benchmark::DoNotOptimize(frame_ssim(c[0], c[1]));
}
BENCHMARK(BM_Ssim)->Unit(benchmark::kMillisecond);

void BM_StrongPipeline(benchmark::State& state) {
  const Clip& c = sample_clip();
  const Executor exec(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(degrade(c, Preset::kStrong, 42, exec));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(c.size()));
}
BENCHMARK(BM_StrongPipeline)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
