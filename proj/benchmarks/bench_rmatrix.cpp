#include <benchmark/benchmark.h>

#include "qdilog/rmatrix.hpp"

using namespace qdilog;

static void BM_RMatrix(benchmark::State& state) {
  const auto ctx = make_context(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(r_matrix(ctx));
}
BENCHMARK(BM_RMatrix)->DenseRange(3, 7, 2);

static void BM_VerifyYbe(benchmark::State& state) {
  const auto ctx = make_context(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_ybe(ctx));
}
BENCHMARK(BM_VerifyYbe)->DenseRange(3, 7, 2)->Unit(benchmark::kMillisecond);

static void BM_Symmetries(benchmark::State& state) {
  const auto ctx = make_context(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_symmetries(ctx, 4, 100000, 1));
}
BENCHMARK(BM_Symmetries)->Arg(4)->Arg(7)->Unit(benchmark::kMillisecond);
