#include <benchmark/benchmark.h>

#include <string>

#include "qdilog/statesum.hpp"

using namespace qdilog;

namespace {

const char* kTrefoil = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
const char* kFigureEight = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";

// Closure of sigma_1^n.
std::string torus_2n(int n) {
  std::string pd;
  auto lab = [n](int x) { return (x - 1) % (2 * n) + 1; };
  for (int a = 1; a < 2 * n; a += 2) {
    pd += "X[" + std::to_string(lab(a)) + "," + std::to_string(lab(a + n)) + "," + std::to_string(lab(a + 1)) + "," +
          std::to_string(lab(a + n + 1)) + "] ";
  }
  return pd;
}

}  // namespace

static void BM_BruteFigureEight(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto ctx = make_context(n);
  const auto t = cut_tangle(parse_pd(kFigureEight));
  const auto a = solve_charges(t, n);
  Limits lim;
  lim.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(brute_force(ctx, t, a, lim));
}
BENCHMARK(BM_BruteFigureEight)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_TensorFigureEight(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto ctx = make_context(n);
  const auto t = cut_tangle(parse_pd(kFigureEight));
  const auto a = solve_charges(t, n);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(ctx, t, a, Engine::Tensor));
}
BENCHMARK(BM_TensorFigureEight)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_TensorTorusBraid(benchmark::State& state) {
  const auto ctx = make_context(5);
  const auto d = parse_pd(torus_2n(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(invariant(ctx, d));
}
BENCHMARK(BM_TensorTorusBraid)->DenseRange(4, 12, 4)->Unit(benchmark::kMillisecond);

static void BM_SolveCharges(benchmark::State& state) {
  const auto t = cut_tangle(parse_pd(torus_2n(static_cast<int>(state.range(0)))));
  for (auto _ : state) benchmark::DoNotOptimize(solve_charges(t, 12, 7));
}
BENCHMARK(BM_SolveCharges)->DenseRange(4, 16, 4);

static void BM_ParsePd(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse_pd(kTrefoil));
}
BENCHMARK(BM_ParsePd);
