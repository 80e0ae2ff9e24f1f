#include <benchmark/benchmark.h>

#include "corruptkit/analysis.hpp"
#include "corruptkit/corruptions.hpp"
#include "corruptkit/digest.hpp"
#include "corruptkit/image_io.hpp"
#include "corruptkit/lidar.hpp"
#include "corruptkit/parallel.hpp"
#include "corruptkit/plasma.hpp"

using namespace corruptkit;

namespace {

ImageBuffer noise_image(int w, int h) {
  SeededRng rng(1);
  ImageBuffer img(w, h);
  for (auto& v : img.data()) v = static_cast<std::uint8_t>(rng.next_u64() >> 56);
  return img;
}

const ImageBuffer& frame() {
  static const ImageBuffer img = noise_image(1600, 900);
  return img;
}

void run_kind(benchmark::State& state, CorruptionKind kind) {
  const auto spec = resolve_spec(kind, static_cast<Severity>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(apply_corruption(frame(), spec, seed++));
  state.SetItemsProcessed(state.iterations());
}

void BM_Brightness(benchmark::State& s) { run_kind(s, CorruptionKind::kBrightness); }
void BM_Dark(benchmark::State& s) { run_kind(s, CorruptionKind::kDark); }
void BM_Fog(benchmark::State& s) { run_kind(s, CorruptionKind::kFog); }
void BM_Snow(benchmark::State& s) { run_kind(s, CorruptionKind::kSnow); }
void BM_MotionBlur(benchmark::State& s) { run_kind(s, CorruptionKind::kMotionBlur); }
void BM_ColorQuant(benchmark::State& s) { run_kind(s, CorruptionKind::kColorQuant); }

BENCHMARK(BM_Brightness)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Dark)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Fog)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Snow)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MotionBlur)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ColorQuant)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_Plasma(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  for (auto _ : state) {
    SeededRng rng(3);
    benchmark::DoNotOptimize(plasma_fractal(side, 2.0, rng));
  }
}
BENCHMARK(BM_Plasma)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_BrightnessBatch(benchmark::State& state) {
  const int workers = static_cast<int>(state.range(0));
  std::vector<ImageBuffer> out(16);
  for (auto _ : state) {
    parallel_for(out.size(), workers, [&](std::size_t i) { out[i] = apply_brightness(frame(), 0.4); });
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(out.size()));
}
BENCHMARK(BM_BrightnessBatch)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_EncodePng(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(encode_png(frame()));
}
BENCHMARK(BM_EncodePng)->Unit(benchmark::kMillisecond);

void BM_Sha256(benchmark::State& state) {
  const auto bytes = frame().data();
  for (auto _ : state) benchmark::DoNotOptimize(sha256(bytes));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(bytes.size()));
}
BENCHMARK(BM_Sha256);

void BM_FovCrop(benchmark::State& state) {
  SeededRng rng(5);
  PointCloud pc;
  for (int i = 0; i < 300000; ++i) {
    pc.push_back(static_cast<float>(rng.uniform(-80, 80)), static_cast<float>(rng.uniform(-80, 80)), 0.0f, 1.0f);
  }
  for (auto _ : state) benchmark::DoNotOptimize(fov_crop(pc));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pc.size()));
}
BENCHMARK(BM_FovCrop)->Unit(benchmark::kMillisecond);

void BM_Histogram(benchmark::State& state) {
  for (auto _ : state) {
    Histogram h(256);
    h.add(frame());
    benchmark::DoNotOptimize(h.total);
  }
}
BENCHMARK(BM_Histogram)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
