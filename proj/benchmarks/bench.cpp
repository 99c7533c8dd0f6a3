// Microbenchmarks for the hot paths: expression evaluation, adaptive
// quadrature, oscillatory integrals, rotation matrix elements, and one full
// orthogonality inner product.
#include <cmath>
#include <numbers>

#include <benchmark/benchmark.h>

#include "harmlab/axb.hpp"
#include "harmlab/funcexpr.hpp"
#include "harmlab/quadrature.hpp"
#include "harmlab/su2.hpp"

using namespace harmlab;

static void BM_BumpEval(benchmark::State& state) {
  FuncExpr f = FuncExpr::bump(0.3, 0.9).dilated(1.7).modulated(2.5);
  double t = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.eval(t));
    t += 1e-6;
  }
}
BENCHMARK(BM_BumpEval);

static void BM_AdaptiveQuadrature(benchmark::State& state) {
  QuadConfig cfg;
  cfg.rel_tol = std::pow(10.0, -double(state.range(0)));
  FuncExpr f = FuncExpr::bump(0.0, 2.0);
  for (auto _ : state) {
    auto r = integrate_interval(
        [&](double x) { return f.eval(x) * std::cos(7.0 * x); },
        Interval{-2.0, 2.0}, cfg);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_AdaptiveQuadrature)->Arg(6)->Arg(10)->Arg(12);

static void BM_OscillatoryIntegral(benchmark::State& state) {
  QuadConfig cfg;
  cfg.rel_tol = 1e-9;
  const double freq = double(state.range(0));
  FuncExpr f = FuncExpr::bump(0.0, 2.0);
  for (auto _ : state) {
    auto r = integrate_interval(
        [&](double x) {
          const double w = 2.0 * std::numbers::pi * freq * x;
          return f.eval(x) * complexd{std::cos(w), std::sin(w)};
        },
        Interval{-2.0, 2.0}, cfg, freq);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_OscillatoryIntegral)->Arg(1)->Arg(10)->Arg(100);

static void BM_WignerMatrix(benchmark::State& state) {
  const int n = int(state.range(0));
  SU2Element g = SU2Element::from_euler(0.3, 1.1, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wigner_d(n, g));
  }
}
BENCHMARK(BM_WignerMatrix)->Arg(1)->Arg(4)->Arg(16);

static void BM_OrthogonalityInner(benchmark::State& state) {
  QuadConfig cfg;
  cfg.rel_tol = 1e-7;
  cfg.target_tail = 1e-6;
  AlgebraElem u(CoeffSum::coeff(RepSign::Plus,
                                FuncExpr::bump(1.0, 0.4, DomainTag::HalfLine),
                                FuncExpr::bump(1.2, 0.5, DomainTag::HalfLine)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(l2g_inner(u, u, cfg).value);
  }
}
BENCHMARK(BM_OrthogonalityInner);

BENCHMARK_MAIN();
