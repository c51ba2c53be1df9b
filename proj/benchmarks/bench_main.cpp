#include <benchmark/benchmark.h>

#include <functional>
#include <random>

#include "czk/criterion.hpp"
#include "czk/numerics.hpp"

using namespace czk;

namespace {

HomPoly dense(int n, int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-9, 9);
  HomPoly p(n, d);
  std::vector<int> e(n, 0);
  // all exponent vectors of total degree d
  std::function<void(int, int)> fill = [&](int i, int left) {
    if (i == n - 1) {
      e[i] = left;
      if (const int c = coeff(rng)) p.add_term(e, Rational(c));
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = k;
      fill(i + 1, left - k);
    }
  };
  fill(0, d);
  return p;
}

KernelExpansion cfamily_c1() {
  const auto x1 = HomPoly::variable(2, 0), x2 = HomPoly::variable(2, 1);
  return kernel_from_numerator(x1 * x2 * (x1 * x1 - x2 * x2 - HomPoly::norm_power(2, 1)), 4);
}

}  // namespace

static void BM_HarmonicDecompose(benchmark::State& state) {
  const auto p = dense(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(harmonic_decompose(p));
}
BENCHMARK(BM_HarmonicDecompose)->Args({2, 8})->Args({3, 8})->Args({4, 8});

static void BM_CheckConditionC(benchmark::State& state) {
  const auto k = cfamily_c1();
  for (auto _ : state) benchmark::DoNotOptimize(check_condition_c(k));
}
BENCHMARK(BM_CheckConditionC);

static void BM_TruncatedFamily(benchmark::State& state) {
  const Grid g(2, static_cast<int>(state.range(0)), 8.0);
  const auto f = make_field(TestFunctionSpec::gaussian(1.0), g);
  const auto k = cfamily_c1();
  const auto levels = dyadic_levels(g);
  for (auto _ : state) benchmark::DoNotOptimize(truncated_family(k, f, levels));
}
BENCHMARK(BM_TruncatedFamily)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_HardyLittlewood(benchmark::State& state) {
  const Grid g(2, static_cast<int>(state.range(0)), 8.0);
  const auto f = make_field(TestFunctionSpec::bump(2.0), g);
  for (auto _ : state) benchmark::DoNotOptimize(hl_maximal(f));
}
BENCHMARK(BM_HardyLittlewood)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
