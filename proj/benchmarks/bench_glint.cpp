#include <benchmark/benchmark.h>

#include <cmath>
#include <cstdint>
#include <numbers>

#include "glint/aniso_grid.hpp"
#include "glint/counting.hpp"
#include "glint/glint_brdf.hpp"
#include "glint/render.hpp"
#include "glint/rng.hpp"
#include "glint/scene.hpp"

using namespace glint;

namespace {

GlintMaterial bench_material(GlintMode mode) {
  GlintMaterial m;
  m.micro = {ndf::NdfKind::beckmann, 0.3, {0.9, 0.7, 0.4}};
  m.ratio = 0.1;
  m.density = 2e5;
  m.micro_roughness = 0.05;
  m.mode = mode;
  m.seed = 7;
  return m;
}

// Footprints cycle through positions, orientations and anisotropy levels.
grid::Footprint bench_footprint(std::uint64_t i, double ratio) {
  const double phi = rng::uniform(1, i) * std::numbers::pi;
  const Vec2 center{rng::uniform(2, i) * 64.0, rng::uniform(3, i) * 64.0};
  return grid::make_footprint(center, 1e-3, ratio, phi);
}

ndf::ShadingFrame bench_frame(std::uint64_t i) {
  const double a = rng::uniform(4, i) * 2.0 * std::numbers::pi;
  const Vec3 wi = normalize(Vec3{0.3 * std::cos(a), 0.3 * std::sin(a), 1.0});
  const Vec3 wo = normalize(Vec3{-0.25 * std::cos(a), -0.2 * std::sin(a), 1.0});
  return ndf::ShadingFrame::make({0, 0, 1}, wi, wo);
}

void eval_ndf(benchmark::State& state, GlintMode mode) {
  const GlintMaterial m = bench_material(mode);
  const double ratio = static_cast<double>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) {
    const auto r = eval_glint_ndf(bench_footprint(i, ratio), bench_frame(i), m);
    benchmark::DoNotOptimize(r.value);
    ++i;
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_EvalNdfOurs(benchmark::State& state) { eval_ndf(state, GlintMode::ours); }
void BM_EvalNdfZirr(benchmark::State& state) { eval_ndf(state, GlintMode::zirr_baseline); }

void BM_SamplerGated(benchmark::State& state) {
  const double n = static_cast<double>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(counting::sample_binomial_gated(n, 0.05, rng::uniform(5, i), rng::uniform(6, i)));
    ++i;
  }
}

void BM_SamplerReference(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(counting::sample_binomial_reference(n, 0.05, 5, i * n));
    ++i;
  }
}

void BM_SamplerClassic(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(counting::sample_binomial_classic(n, 0.05, rng::mix64(i)));
    ++i;
  }
}

void BM_LocateTetrahedron(benchmark::State& state) {
  std::uint64_t i = 0;
  for (auto _ : state) {
    const double ratio = std::exp2(rng::uniform(7, i) * 8.0);
    const auto t = grid::locate_tetrahedron(bench_footprint(i, ratio));
    benchmark::DoNotOptimize(t);
    ++i;
  }
}

void BM_RenderPlane(benchmark::State& state) {
  auto config = render::load_config(GLINT_CONFIG_DIR "/plane25.cfg");
  config.width = 64;
  config.height = 48;
  for (auto _ : state) {
    const auto out = render::render(config, 1);
    benchmark::DoNotOptimize(out.image.pixels.data());
  }
  state.SetItemsProcessed(state.iterations() * config.width * config.height);
}

}  // namespace

BENCHMARK(BM_EvalNdfOurs)->Arg(1)->Arg(4)->Arg(16);
BENCHMARK(BM_EvalNdfZirr)->Arg(1)->Arg(4)->Arg(16);
BENCHMARK(BM_SamplerGated)->Arg(16)->Arg(1024)->Arg(1 << 20);
BENCHMARK(BM_SamplerReference)->Arg(16)->Arg(1024);
BENCHMARK(BM_SamplerClassic)->Arg(16)->Arg(1024)->Arg(1 << 20);
BENCHMARK(BM_LocateTetrahedron);
BENCHMARK(BM_RenderPlane)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
