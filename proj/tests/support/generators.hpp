#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qtc/expr.hpp"
#include "qtc/smooth.hpp"
#include "qtc/torus.hpp"

namespace qtc::gen {

// Seeded value generators for the property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  bool coin() { return integer(0, 1) == 1; }

  // p/q with |p/q| <= bound and 1 <= q <= max_den.
  Rational rational(std::int64_t bound, std::int64_t max_den) {
    std::int64_t q = integer(1, max_den);
    std::int64_t p = integer(-bound * q, bound * q);
    return make_rational(static_cast<long>(p), static_cast<long>(q));
  }

  RationalPoly poly(unsigned max_degree, std::int64_t bound, std::int64_t max_den) {
    RationalPoly p;
    for (unsigned d = 0; d <= max_degree; ++d)
      if (coin()) p += RationalPoly::monomial(d, rational(bound, max_den));
    return p;
  }

  PhaseExponent phase(unsigned max_degree = 3) { return PhaseExponent(poly(max_degree, 10, 12)); }

  Scalar scalar(std::size_t max_terms = 4) {
    Scalar s;
    std::size_t terms = static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(max_terms)));
    for (std::size_t i = 0; i < terms; ++i) s += Scalar::phase(phase(2), rational(3, 4));
    return s;
  }

  // Entries c*t + q with c, q in Q and |c|, |q| <= 2.
  ThetaMatrix theta(std::size_t n) {
    std::vector<std::vector<RationalPoly>> rows(n, std::vector<RationalPoly>(n));
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = k + 1; l < n; ++l) {
        RationalPoly e = RationalPoly::monomial(1, rational(2, 6)) + RationalPoly(rational(2, 6));
        rows[k][l] = e;
        rows[l][k] = -e;
      }
    return ThetaMatrix(rows);
  }

  Exponent exponent(std::size_t n, std::int64_t bound) {
    Exponent e(n);
    for (auto& x : e) x = integer(-bound, bound);
    return e;
  }

  TorusElement element(const ThetaPtr& theta, std::size_t max_terms, std::int64_t bound) {
    TorusElement a(theta);
    std::size_t terms = static_cast<std::size_t>(integer(1, static_cast<std::int64_t>(max_terms)));
    for (std::size_t i = 0; i < terms; ++i)
      a += TorusElement::monomial(theta, exponent(theta->dimension(), bound), scalar(2));
    return a;
  }

  // Word of length <= 6 in S = [[0,1],[-1,0]] and T = [[1,1],[0,1]] and their inverses.
  IntMatrix sl2() {
    IntMatrix S = IntMatrix::from_rows({{0, 1}, {-1, 0}});
    IntMatrix T = IntMatrix::from_rows({{1, 1}, {0, 1}});
    IntMatrix Ti = IntMatrix::from_rows({{1, -1}, {0, 1}});
    IntMatrix M = IntMatrix::identity(2);
    std::int64_t len = integer(0, 6);
    for (std::int64_t i = 0; i < len; ++i) {
      switch (integer(0, 3)) {
        case 0: M = M * S; break;
        case 1: M = M * -S; break;
        case 2: M = M * T; break;
        default: M = M * Ti; break;
      }
    }
    return M;
  }

  TorusPoint point() { return TorusPoint(rational(3, 12), rational(3, 12)); }

  OutSmoothElement out_element() { return OutSmoothElement({point(), point()}, sl2()); }

  Expr expr(int depth) {
    if (depth <= 0 || integer(0, 3) == 0) return leaf();
    switch (integer(0, 4)) {
      case 0: {
        std::vector<ExprTerm> terms;
        std::int64_t count = integer(1, 3);
        for (std::int64_t i = 0; i < count; ++i) terms.push_back({coin(), expr(depth - 1)});
        if (terms.size() == 1) terms[0].negative = true;
        return Expr::sum(std::move(terms));
      }
      case 1: {
        std::vector<Expr> factors;
        std::int64_t count = integer(2, 3);
        for (std::int64_t i = 0; i < count; ++i) factors.push_back(expr(depth - 1));
        return Expr::product(std::move(factors));
      }
      case 2:
        return Expr::power(expr(depth - 1), integer(-3, 3));
      default:
        return Expr::adjoint(expr(depth - 1));
    }
  }

  Expr leaf() {
    switch (integer(0, 4)) {
      case 0: return Expr::generator(static_cast<std::size_t>(integer(0, 3)));
      case 1: return Expr::monomial(exponent(static_cast<std::size_t>(integer(1, 3)), 3));
      case 2: return Expr::phase(poly(2, 3, 6));
      default: return Expr::number(abs_rational());
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  Rational abs_rational() {
    Rational q = rational(5, 7);
    return q < 0 ? Rational(-q) : q;
  }

  std::mt19937_64 rng_;
};

}  // namespace qtc::gen
