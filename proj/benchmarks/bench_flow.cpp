#include <benchmark/benchmark.h>

#include "hoflow/constraint.hpp"
#include "hoflow/image.hpp"
#include "hoflow/solver.hpp"
#include "hoflow/synthetic.hpp"

namespace {

using namespace hoflow;

// One 256x256 textured pair shared by all benchmarks.
const SyntheticScene& scene() {
  static const SyntheticScene s = [] {
    SyntheticSpec spec;
    spec.texture = TextureKind::random_smooth;
    spec.seed = 7;
    spec.motion = MotionKind::translate;
    spec.translate_u = 1.0;
    spec.translate_v = 0.5;
    return generate_synthetic(spec);
  }();
  return s;
}

const ConstraintField& second_order_field() {
  static const ConstraintField c = [] {
    const SyntheticScene& s = scene();
    const GrayImage b0 = gaussian_blur(s.frame0, 1.4);
    const GrayImage b1 = gaussian_blur(s.frame1, 1.4);
    return compose_second_order(compute_gradient_tensor(b0, b1));
  }();
  return c;
}

void BM_GaussianBlur(benchmark::State& state) {
  const GrayImage& img = scene().frame0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gaussian_blur(img, 1.4));
  }
}
BENCHMARK(BM_GaussianBlur);

void BM_GradientTensor(benchmark::State& state) {
  const SyntheticScene& s = scene();
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_gradient_tensor(s.frame0, s.frame1));
  }
}
BENCHMARK(BM_GradientTensor);

void BM_ComposeSecondOrder(benchmark::State& state) {
  const GradientTensor t = compute_gradient_tensor(scene().frame0, scene().frame1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compose_second_order(t));
  }
}
BENCHMARK(BM_ComposeSecondOrder);

void BM_SolveLucasKanade(benchmark::State& state) {
  const ConstraintField& c = second_order_field();
  SolverConfig cfg;
  cfg.window_radius = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_lucas_kanade(c, cfg));
  }
}
BENCHMARK(BM_SolveLucasKanade)->Arg(3)->Arg(7)->Arg(11);

void BM_ComputeFlow(benchmark::State& state) {
  const SyntheticScene& s = scene();
  SolverConfig cfg;
  cfg.order = state.range(0) == 0 ? ConstraintOrder::first : ConstraintOrder::second;
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_flow(s.frame0, s.frame1, nullptr, cfg));
  }
}
BENCHMARK(BM_ComputeFlow)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
