#include <benchmark/benchmark.h>

#include <complex>

#include "eigenbound/balance.hpp"
#include "eigenbound/bounds.hpp"
#include "eigenbound/curve.hpp"
#include "eigenbound/matspace.hpp"
#include "eigenbound/quad.hpp"
#include "eigenbound/spectral.hpp"

namespace {

using namespace eigenbound;

void BM_EvalGauss(benchmark::State& state) {
  auto atlas = make_rational_normal_curve(3);
  const auto& chart = atlas.chart(0);
  Complex w(0.37, -0.21);
  for (auto _ : state) {
    auto b = eval_gauss(chart, w);
    benchmark::DoNotOptimize(b);
  }
}
BENCHMARK(BM_EvalGauss);

void BM_CurvatureData(benchmark::State& state) {
  auto atlas = make_rational_normal_curve(3);
  const auto& chart = atlas.chart(0);
  Complex w(0.37, -0.21);
  for (auto _ : state) {
    auto data = curvature_data(chart, w);
    benchmark::DoNotOptimize(data);
  }
}
BENCHMARK(BM_CurvatureData);

void BM_QuadratureArea(benchmark::State& state) {
  auto atlas = make_rational_normal_curve(2);
  QuadratureGrid grid(static_cast<int>(state.range(0)),
                      static_cast<int>(2 * state.range(0)));
  for (auto _ : state) {
    double area = curve_area(atlas, grid);
    benchmark::DoNotOptimize(area);
  }
}
BENCHMARK(BM_QuadratureArea)->Arg(16)->Arg(32)->Arg(64);

void BM_CenterOfMass(benchmark::State& state) {
  auto atlas = make_rational_normal_curve(2);
  auto center = HermitianPoint::center(3);
  QuadratureGrid grid(32, 64);
  for (auto _ : state) {
    auto phi = center_of_mass(atlas, MeasureSpec::induced(), center, 0.25, grid);
    benchmark::DoNotOptimize(phi);
  }
}
BENCHMARK(BM_CenterOfMass);

void BM_Balance(benchmark::State& state) {
  CurveAtlas conic = make_rational_normal_curve(2);
  std::vector<Polynomial> comps;
  for (const auto& p : conic.chart(0).components())
    comps.push_back(p.rescaled(Complex(2.0, 0.0)));
  CurveAtlas atlas(std::move(comps), "asym_conic");
  QuadratureGrid grid(32, 64);
  for (auto _ : state) {
    auto result = balance(atlas, MeasureSpec::induced(), 0.25, 1e-8, grid);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_Balance);

void BM_MinimizeF(benchmark::State& state) {
  for (auto _ : state) {
    auto r = minimize_F(3, 7, 1.5);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_MinimizeF);

void BM_Lambda1Bound(benchmark::State& state) {
  long long g = state.range(0);
  for (auto _ : state) {
    auto r = lambda1_bound(g);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_Lambda1Bound)->Arg(10)->Arg(50)->Arg(200);

void BM_Lambda1Icosphere(benchmark::State& state) {
  auto mesh = build_icosphere(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto r = lambda1_area(mesh);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_Lambda1Icosphere)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
