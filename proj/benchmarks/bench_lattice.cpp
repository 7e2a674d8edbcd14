#include <benchmark/benchmark.h>

#include "qtc/covering.hpp"
#include "qtc/lattice.hpp"

using namespace qtc;

namespace {

IntMatrix sample(std::size_t n) {
  IntMatrix M(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) M(i, j) = static_cast<long>((3 * i + 7 * j + i * j) % 11) - 5;
  for (std::size_t i = 0; i < n; ++i) M(i, i) += 13;
  return M;
}

}  // namespace

static void BM_Hermite(benchmark::State& state) {
  IntMatrix M = sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hermite_normal_form(M));
}
BENCHMARK(BM_Hermite)->Arg(2)->Arg(4)->Arg(8);

static void BM_Smith(benchmark::State& state) {
  IntMatrix M = sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(M));
}
BENCHMARK(BM_Smith)->Arg(2)->Arg(4)->Arg(8);

static void BM_Classify(benchmark::State& state) {
  ThetaMatrix theta = ThetaMatrix::two(RationalPoly::t());
  for (auto _ : state)
    benchmark::DoNotOptimize(classify_coverings(theta, state.range(0), 0, 3, static_cast<unsigned>(state.range(1))));
}
BENCHMARK(BM_Classify)->Args({4, 1})->Args({6, 1})->Args({6, 4})->Unit(benchmark::kMillisecond);
