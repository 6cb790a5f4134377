#include <benchmark/benchmark.h>

#include <bqmaxwell/dirac_ops.hpp>
#include <bqmaxwell/parabolic_teodorescu.hpp>
#include <bqmaxwell/teodorescu_static.hpp>

using namespace bqmaxwell;

namespace {

BiquatField smooth_field(int n) {
  const SpatialGrid g(n, 2.0);
  return BiquatField::sample(g, [](const Vec3& x) {
    const double b = box_window(x, 0.2, 0.45);
    return Biquaternion(Complex(b), Complex(x[1] * b), Complex(0.0, x[2] * b),
                        Complex(0.5 * b));
  });
}

void BM_DftRoundtrip(benchmark::State& state) {
  const BiquatField f = smooth_field(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dft_inverse(dft_forward(f)));
}
BENCHMARK(BM_DftRoundtrip)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_ApplyD(benchmark::State& state) {
  const BiquatField f = smooth_field(static_cast<int>(state.range(0)));
  const auto method = state.range(1) ? DerivativeMethod::fd2 : DerivativeMethod::spectral;
  for (auto _ : state) benchmark::DoNotOptimize(apply_D(f, method));
}
BENCHMARK(BM_ApplyD)->Args({32, 0})->Args({32, 1})->Args({64, 0})->Args({64, 1})
    ->Unit(benchmark::kMillisecond);

void BM_ParabolicTeodorescu(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int nt = static_cast<int>(state.range(1));
  const SpatialGrid g(n, 2.0);
  const SpaceTimeField w = SpaceTimeField::sample(g, nt, 0.01, [](const Vec3& x, double t) {
    return Biquaternion(Complex(box_window(x, 0.2, 0.45) * (1.0 + t)));
  });
  const ParabolicOptions opts{TimeQuadrature::trapezoid, SupportPolicy::padded_subbox};
  const OperatorConfig op(Sign::plus, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(parabolic_teodorescu(w, op, opts));
}
BENCHMARK(BM_ParabolicTeodorescu)->Args({16, 64})->Args({32, 32})->Unit(benchmark::kMillisecond);

void BM_Teodorescu(benchmark::State& state) {
  const SpatialGrid g(static_cast<int>(state.range(0)), 4.0);
  const DomainMask ball = DomainMask::ball(g, 1.0);
  const BiquatField one = BiquatField::sample(g, [](const Vec3&) { return Biquaternion(1.0); });
  const auto method = state.range(1) ? TeodorescuMethod::fft : TeodorescuMethod::direct;
  for (auto _ : state) benchmark::DoNotOptimize(teodorescu(one, ball, method));
}
BENCHMARK(BM_Teodorescu)->Args({16, 0})->Args({16, 1})->Args({32, 1})->Args({64, 1})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
