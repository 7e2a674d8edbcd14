#include <benchmark/benchmark.h>

#include "qtc/expr.hpp"
#include "qtc/torus.hpp"

using namespace qtc;

static void BM_MonomialProduct(benchmark::State& state) {
  std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<std::vector<RationalPoly>> rows(n, std::vector<RationalPoly>(n));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l) {
      rows[k][l] = RationalPoly::t() * make_rational(static_cast<long>(k + 1), static_cast<long>(l + 2));
      rows[l][k] = -rows[k][l];
    }
  auto th = make_theta(ThetaMatrix(rows));
  Exponent a(n), b(n);
  for (std::size_t k = 0; k < n; ++k) {
    a[k] = static_cast<std::int64_t>(k) - 1;
    b[k] = 2 - static_cast<std::int64_t>(k);
  }
  TorusElement x = monomial(th, a), y = monomial(th, b);
  for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_MonomialProduct)->Arg(2)->Arg(3)->Arg(5);

static void BM_PolynomialProduct(benchmark::State& state) {
  auto th = make_theta(ThetaMatrix::two(RationalPoly::t()));
  std::string text = "(u + e(1/3)*v + 1/2*u'*v)^" + std::to_string(state.range(0));
  TorusElement x = parse_expr(text, th);
  for (auto _ : state) benchmark::DoNotOptimize(x * x);
  state.counters["terms"] = static_cast<double>(x.terms().size());
}
BENCHMARK(BM_PolynomialProduct)->Arg(2)->Arg(4)->Arg(6);
