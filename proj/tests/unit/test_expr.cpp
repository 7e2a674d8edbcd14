#include <doctest.h>

#include "generators.hpp"
#include "qtc/errors.hpp"
#include "qtc/expr.hpp"

using namespace qtc;

namespace {

ThetaPtr theta_t() { return make_theta(ThetaMatrix::two(RationalPoly::t())); }

}  // namespace

TEST_CASE("evaluating expressions") {
  auto th = theta_t();
  CHECK(parse_expr("u*v", th) == monomial(th, {1, 1}));
  CHECK(parse_expr("v*u", th).to_string() == "e(-t)*U(1,1)");
  CHECK(parse_expr("e(1/2)*u", th) == -TorusElement::generator(th, 0));
  CHECK(parse_expr("u1*u2", th) == parse_expr("u*v", th));
  CHECK(parse_expr("u^-1", th) == parse_expr("u'", th));
  CHECK(parse_expr("(u*v)'", th) == parse_expr("e(-t)*U(-1,-1)", th));
  CHECK(parse_expr("u^2*u^-2 - 1", th).is_zero());
  CHECK(parse_expr("-1/2*(u + v)^2", th) ==
        parse_expr("-1/2*u^2 - 1/2*u*v - 1/2*v*u - 1/2*v^2", th));
  CHECK(parse_expr("e(t/2 + 1/4)", th).to_string() == "e(1/4 + t/2)");
}

TEST_CASE("expression errors") {
  auto th = theta_t();
  CHECK_THROWS_AS(parse_expr("u +", th), ParseError);
  CHECK_THROWS_AS(parse_expr("u3", th), InvalidArgument);
  CHECK_THROWS_AS(parse_expr("U(1,2,3)", th), DimensionMismatch);
  CHECK_THROWS_AS(parse_expr("(u+v)^-1", th), InvalidArgument);
  try {
    parse_expr("u * * v", th);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("expression printing") {
  CHECK(Expr::parse("u*v").to_string() == "u*v");
  CHECK(Expr::parse("(u + v)*u3").to_string() == "(u + v)*u3");
  CHECK(Expr::parse("u''").to_string() == "u''");
  CHECK(Expr::parse("-(u - v)").to_string() == "-(u - v)");
}

TEST_CASE("property: parser round-trips random trees") {
  gen::Gen g(51);
  for (int i = 0; i < 500; ++i) {
    Expr e = g.expr(5);
    std::string text = e.to_string();
    Expr back = Expr::parse(text);
    CHECK_MESSAGE(back == e, text);
    CHECK(back.to_string() == text);
  }
}
