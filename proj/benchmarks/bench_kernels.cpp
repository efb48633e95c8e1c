#include <random>

#include <benchmark/benchmark.h>

#include "zeno/harness.hpp"
#include "zeno/random.hpp"
#include "zeno/spectral.hpp"

namespace {

zeno::SuperOp gapped_operation(int d) {
  std::mt19937_64 rng(100 + d);
  return zeno::random_gapped_operation(d, 0.5, rng);
}

void BM_expm_superop(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  const zeno::SuperOp l = zeno::random_gkls(d, 2, 1.0, rng).to_superop();
  for (auto _ : state) benchmark::DoNotOptimize(zeno::expm_superop(l, 0.37));
}
BENCHMARK(BM_expm_superop)->Arg(2)->Arg(3)->Arg(5);

void BM_zeno_product(benchmark::State& state) {
  const long n = state.range(0);
  std::mt19937_64 rng(2);
  const zeno::SuperOp m = gapped_operation(2);
  const zeno::SuperOp l = zeno::random_gkls(2, 1, 1.0, rng).to_superop();
  const zeno::ZenoStaticScenario s(m, l, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(zeno::zeno_product(s, n));
}
BENCHMARK(BM_zeno_product)->Arg(64)->Arg(256)->Arg(1024);

void BM_riesz_contour(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const zeno::SuperOp m = gapped_operation(d);
  const auto rep = zeno::spectrum_report(m, 0.05);
  const auto contour = zeno::ContourSpec::around_one(rep.delta);
  for (auto _ : state) benchmark::DoNotOptimize(zeno::riesz_contour(m, contour));
}
BENCHMARK(BM_riesz_contour)->Arg(2)->Arg(3);

void BM_riesz_schur(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const zeno::SuperOp m = gapped_operation(d);
  const auto rep = zeno::spectrum_report(m, 0.05);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        zeno::riesz_schur(m, zeno::Complex(1.0, 0.0), 0.5 * (1.0 - rep.delta)));
}
BENCHMARK(BM_riesz_schur)->Arg(2)->Arg(3);

void BM_propagate(benchmark::State& state) {
  const auto cfg = zeno::builtin_scenario("timedep_drive");
  const auto& path = std::get<zeno::GeneratorPath>(cfg.generator);
  const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(zeno::propagate(path, 0.0, 1.0, tol));
}
BENCHMARK(BM_propagate)->Arg(6)->Arg(8)->Arg(10);

void BM_norm_lower_estimate(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const zeno::SuperOp t = zeno::random_superop(3, 1.0, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(zeno::norm_1to1_estimate(t, 4, 16, 99));
}
BENCHMARK(BM_norm_lower_estimate);

}  // namespace

BENCHMARK_MAIN();
