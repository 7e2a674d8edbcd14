#include <doctest.h>

#include "generators.hpp"
#include "qtc/errors.hpp"
#include "qtc/scalar.hpp"

using namespace qtc;

namespace {

PhaseExponent ph(const char* s) { return PhaseExponent::parse(s); }
Scalar sc(const char* s) { return Scalar::parse(s); }

}  // namespace

TEST_CASE("phase exponents reduce their constant term modulo one") {
  CHECK(phase_combine(ph("1/2"), ph("1/2")).is_trivial());
  CHECK(phase_combine(ph("1/3 + t"), ph("2/3 + 2*t")) == ph("3*t"));
  CHECK(phase_combine(ph("1/4"), ph("t^2")).to_string() == "1/4 + t^2");
  CHECK(ph("-1/3").to_string() == "2/3");
  CHECK(ph("7/2 - t").to_string() == "1/2 - t");
}

TEST_CASE("triviality follows the transcendental model") {
  CHECK(phase_is_trivial(PhaseExponent(RationalPoly(2))));
  CHECK_FALSE(phase_is_trivial(ph("t")));
  CHECK_FALSE(phase_is_trivial(ph("1/2")));
  CHECK(phase_is_trivial(ph("t - t")));
}

TEST_CASE("polynomial text round-trips") {
  for (const char* s : {"0", "t", "-t", "t/2", "3*t/2", "1/4 + t^2", "2/3 - 5*t^3"}) {
    CHECK(RationalPoly::parse(s).to_string() == s);
  }
  CHECK_THROWS_AS(RationalPoly::parse("1/0"), ParseError);
  CHECK_THROWS_AS(RationalPoly::parse("t +"), ParseError);
  try {
    RationalPoly::parse("1 + x");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("scalar products and sums") {
  CHECK(scalar_mul(Scalar::phase(ph("1/2")), Scalar::phase(ph("1/2"))) == Scalar::one());
  CHECK(scalar_mul(sc("1 + e(t)"), sc("e(-t)")) == sc("e(-t) + 1"));
  Scalar a = sc("1/3*e(t) - 2*e(1/5)");
  CHECK(a * Scalar::one() == a);
  CHECK(Scalar::phase(ph("1/2")) == Scalar(-1));
  CHECK(scalar_add(sc("1"), scalar_add(sc("e(1/3)"), sc("e(2/3)"))).is_zero());
  CHECK(sc("e(1/4) + e(3/4)").is_zero());
  CHECK_FALSE(sc("e(1/4) + e(1/2)").is_zero());
}

TEST_CASE("cyclotomic relations are decided exactly") {
  // 1 + z + ... + z^4 = 0 for a primitive fifth root of unity.
  Scalar s;
  for (int k = 0; k < 5; ++k) s += Scalar::phase(PhaseExponent(make_rational(k, 5)));
  CHECK(s.is_zero());
  CHECK(sc("e(1/6) - e(1/3)") == Scalar::one());
  CHECK(sc("e(1/6 + t) - e(1/3 + t)") == sc("e(t)"));
  CHECK(sc("e(1/6 + t) - e(1/3 + t)") != sc("e(2*t)"));
  std::map<Rational, Rational> terms{{make_rational(1, 7), 1}, {make_rational(2, 7), 1}};
  CHECK_FALSE(root_of_unity_sum_is_zero(terms));
}

TEST_CASE("conjugation negates phases") {
  CHECK(scalar_conj(sc("e(t)")) == sc("e(-t)"));
  CHECK(scalar_conj(Scalar::one()) == Scalar::one());
  Scalar c = scalar_conj(sc("e(1/3) + e(t)"));
  CHECK(c.to_string() == "e(2/3) + e(-t)");
}

TEST_CASE("as_phase recognises single phases, including folded signs") {
  CHECK(sc("-e(t)").as_phase() == ph("1/2 + t"));
  CHECK(sc("e(1/6) - e(1/3)").as_phase() == ph("0"));
  CHECK_FALSE(sc("2*e(t)").as_phase().has_value());
  CHECK_FALSE(sc("e(t) + e(2*t)").as_phase().has_value());
}

TEST_CASE("scalar text round-trips bit-exactly") {
  for (const char* s : {"0", "1", "-1/2*e(1/3 - t)", "e(2/3) + e(-t)", "3/4 + 2*e(t^2)"}) {
    CHECK(Scalar::parse(s).to_string() == s);
  }
}

TEST_CASE("property: phase group laws") {
  gen::Gen g(11);
  for (int i = 0; i < 300; ++i) {
    PhaseExponent p = g.phase(), q = g.phase(), r = g.phase();
    CHECK(p + q == q + p);
    CHECK((p + q) + r == p + (q + r));
    CHECK((p + -p).is_trivial());
    CHECK(phase_is_trivial(p + q) == (q == -p));
  }
}

TEST_CASE("property: scalar ring axioms and involution") {
  gen::Gen g(12);
  for (int i = 0; i < 150; ++i) {
    Scalar a = g.scalar(), b = g.scalar(), c = g.scalar();
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + (-a) == Scalar());
    CHECK(scalar_conj(scalar_conj(a)).identical(a));
    CHECK(scalar_conj(a * b) == scalar_conj(a) * scalar_conj(b));
    CHECK(Scalar::parse(a.to_string()).identical(a));
  }
}
