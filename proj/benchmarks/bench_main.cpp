#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "gammareg/analysis.hpp"
#include "gammareg/conjugate.hpp"
#include "gammareg/envelope.hpp"
#include "gammareg/hull3d.hpp"

using namespace gammareg;

namespace {

SampledFn1D noisy(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  return sample(make_uniform_grid(-1, 1, n), [&](double x) { return x * x + u(rng); });
}

}  // namespace

static void BM_Conjugate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SampledFn1D f = noisy(n);
  const SlopeGrid s(make_uniform_grid(-5, 5, n));
  for (auto _ : state) benchmark::DoNotOptimize(lf_conjugate(f, s));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Conjugate)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity(benchmark::oN);

static void BM_ConjugateBruteForce(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SampledFn1D f = noisy(n);
  const SlopeGrid s(make_uniform_grid(-5, 5, n));
  for (auto _ : state) benchmark::DoNotOptimize(lf_conjugate_bruteforce(f, s));
}
BENCHMARK(BM_ConjugateBruteForce)->RangeMultiplier(4)->Range(1 << 8, 1 << 12);

static void BM_Envelope1D(benchmark::State& state) {
  const SampledFn1D f = noisy(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(envelope_1d(f));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Envelope1D)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity(benchmark::oN);

static void BM_LowerHull3D(benchmark::State& state) {
  const Grid2D g = make_disk_grid(static_cast<std::size_t>(state.range(0)));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 0.05);
  std::vector<Point3> pts;
  for (std::size_t k = 0; k < g.masked_count(); ++k) {
    const double x = g.x_of(k), y = g.y_of(k);
    pts.push_back({x, y, x * x + y * y + u(rng)});
  }
  for (auto _ : state) benchmark::DoNotOptimize(lower_hull_3d(pts));
  state.counters["points"] = static_cast<double>(pts.size());
}
BENCHMARK(BM_LowerHull3D)->Arg(33)->Arg(65)->Arg(161)->Unit(benchmark::kMillisecond);

static void BM_SharpnessCurve(benchmark::State& state) {
  std::vector<double> ts;
  for (int k = 0; k < 9; ++k) ts.push_back(1e-2 * std::pow(1e-2, k / 8.0));
  CurveOptions opts;
  opts.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sharpness_curve(PhiSpec::power(1), ts, opts));
}
BENCHMARK(BM_SharpnessCurve)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_CrossSection(benchmark::State& state) {
  const CounterexampleKit kit = build_v(PhiSpec::power(1), make_kit_grid(20001, 2));
  const Grid2D g = make_disk_grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cross_section_check(kit, g, 0.05));
}
BENCHMARK(BM_CrossSection)->Arg(81)->Arg(161)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
