#include <benchmark/benchmark.h>

#include "qtc/smooth.hpp"

using namespace qtc;

static void BM_SmoothBuildKlein(benchmark::State& state) {
  auto th = make_theta(ThetaMatrix::two(RationalPoly::t()));
  FiniteAbelianGroup G({2, 2});
  TorusPair generic{TorusPoint(make_rational(1, 3), make_rational(2, 5)), TorusPoint(make_rational(3, 7), 0)};
  std::vector<OutSmoothElement> images{
      OutSmoothElement(generic, IntMatrix::from_rows({{-1, 0}, {0, -1}})),
      OutSmoothElement({TorusPoint(0, make_rational(1, 2)), TorusPoint(0, make_rational(1, 2))},
                       IntMatrix::identity(2))};
  for (auto _ : state) benchmark::DoNotOptimize(build_smooth_covering(th, G, images));
}
BENCHMARK(BM_SmoothBuildKlein)->Unit(benchmark::kMillisecond);

static void BM_SmoothBuildRotation(benchmark::State& state) {
  auto th = make_theta(ThetaMatrix::two(RationalPoly::t()));
  FiniteAbelianGroup G({3});
  std::vector<OutSmoothElement> images{OutSmoothElement(
      {TorusPoint(make_rational(1, 5), 0), TorusPoint(0, make_rational(1, 7))}, IntMatrix::from_rows({{0, -1}, {1, -1}}))};
  for (auto _ : state) benchmark::DoNotOptimize(build_smooth_covering(th, G, images));
}
BENCHMARK(BM_SmoothBuildRotation)->Unit(benchmark::kMillisecond);
