#include <benchmark/benchmark.h>

#include "qdesign/fano.hpp"
#include "qdesign/fqoracle.hpp"
#include "qdesign/intersect.hpp"
#include "qdesign/qpoly.hpp"

using namespace qdesign;

static void BM_GaussPoly(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gauss_poly(n, n / 2));
}
BENCHMARK(BM_GaussPoly)->Arg(10)->Arg(20)->Arg(40);

static void BM_FactorGauss(benchmark::State& state) {
  const QPolynomial g = gauss_poly(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)) / 2);
  for (auto _ : state) benchmark::DoNotOptimize(factor_cyclotomic(g));
}
BENCHMARK(BM_FactorGauss)->Arg(10)->Arg(20);

static void BM_KoehlerSymbolic(benchmark::State& state) {
  const auto p = DesignParams::symbolic(2, 13, 3, QPolynomial(1));
  for (auto _ : state) benchmark::DoNotOptimize(koehler_forms(p, 5));
}
BENCHMARK(BM_KoehlerSymbolic);

static void BM_FanoDistribution(benchmark::State& state) {
  const QMode mode = QMode::symbolic();
  for (auto _ : state) benchmark::DoNotOptimize(fano_distribution(mode));
}
BENCHMARK(BM_FanoDistribution);

static void BM_NonexistenceT4(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(scan_family(Family::t4, 5, 30));
}
BENCHMARK(BM_NonexistenceT4);

static void BM_EnumerateSubspaces(benchmark::State& state) {
  const FiniteField f = make_field(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_subspaces(f, 6, 3));
}
BENCHMARK(BM_EnumerateSubspaces)->Arg(2)->Arg(3);

static void BM_VerifySpread(benchmark::State& state) {
  const DesignInstance d = spread_construct(2, 6, 3);
  for (auto _ : state) benchmark::DoNotOptimize(verify_design(d, 1));
}
BENCHMARK(BM_VerifySpread);
