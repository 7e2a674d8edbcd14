#include "qtc/expr.hpp"

#include <cctype>
#include <utility>

#include "qtc/detail/cursor.hpp"
#include "qtc/errors.hpp"

namespace qtc {

Expr Expr::generator(std::size_t index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Generator;
  n->index = index;
  return Expr(n);
}

Expr Expr::monomial(Exponent lambda) {
  if (lambda.empty()) throw InvalidArgument("monomial needs at least one exponent");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Monomial;
  n->lambda = std::move(lambda);
  return Expr(n);
}

Expr Expr::phase(RationalPoly p) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Phase;
  n->poly = std::move(p);
  return Expr(n);
}

Expr Expr::number(Rational q) {
  if (q < 0) throw InvalidArgument("number literals are nonnegative");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Number;
  n->number = std::move(q);
  return Expr(n);
}

Expr Expr::sum(std::vector<SumTerm> terms) {
  if (terms.empty() || (terms.size() == 1 && !terms[0].negative))
    throw InvalidArgument("a sum needs two terms or a leading minus");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  n->terms = std::move(terms);
  return Expr(n);
}

Expr Expr::product(std::vector<Expr> factors) {
  if (factors.size() < 2) throw InvalidArgument("a product needs two factors");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Product;
  n->children = std::move(factors);
  return Expr(n);
}

Expr Expr::power(Expr base, std::int64_t k) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Power;
  n->children = {std::move(base)};
  n->exponent = k;
  return Expr(n);
}

Expr Expr::adjoint(Expr operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Adjoint;
  n->children = {std::move(operand)};
  return Expr(n);
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expr::Kind::Generator:
      return a.index() == b.index();
    case Expr::Kind::Monomial:
      return a.lambda() == b.lambda();
    case Expr::Kind::Phase:
      return a.poly() == b.poly();
    case Expr::Kind::Number:
      return a.number_value() == b.number_value();
    case Expr::Kind::Sum:
      if (a.terms().size() != b.terms().size()) return false;
      for (std::size_t i = 0; i < a.terms().size(); ++i)
        if (a.terms()[i].negative != b.terms()[i].negative || !(a.terms()[i].term == b.terms()[i].term))
          return false;
      return true;
    case Expr::Kind::Power:
      if (a.exponent() != b.exponent()) return false;
      [[fallthrough]];
    case Expr::Kind::Product:
    case Expr::Kind::Adjoint:
      return a.children() == b.children();
  }
  return false;
}

namespace {

bool is_compound(const Expr& e) { return e.kind() == Expr::Kind::Sum || e.kind() == Expr::Kind::Product; }

std::string wrap(const Expr& e, bool parens) { return parens ? "(" + e.to_string() + ")" : e.to_string(); }

class Parser {
 public:
  explicit Parser(std::string_view src) : cur_(src) {}

  Expr run() {
    Expr e = expr();
    cur_.expect_end();
    return e;
  }

 private:
  Expr expr() {
    std::vector<Expr::SumTerm> terms;
    bool negative = false;
    if (cur_.accept('-'))
      negative = true;
    else
      cur_.accept('+');
    terms.push_back({negative, term()});
    while (true) {
      if (cur_.accept('+'))
        terms.push_back({false, term()});
      else if (cur_.accept('-'))
        terms.push_back({true, term()});
      else
        break;
    }
    if (terms.size() == 1 && !terms[0].negative) return terms[0].term;
    return Expr::sum(std::move(terms));
  }

  Expr term() {
    std::vector<Expr> factors{factor()};
    while (cur_.accept('*')) factors.push_back(factor());
    if (factors.size() == 1) return factors[0];
    return Expr::product(std::move(factors));
  }

  Expr factor() {
    Expr e = atom();
    while (true) {
      if (cur_.accept('^'))
        e = Expr::power(e, cur_.signed_int());
      else if (cur_.accept('\''))
        e = Expr::adjoint(e);
      else
        return e;
    }
  }

  Expr atom() {
    char c = cur_.peek();
    if (c == '(') {
      cur_.advance();
      Expr e = expr();
      cur_.expect(')');
      return e;
    }
    if (cur_.peek_digit()) return Expr::number(cur_.unsigned_rational());
    if (c == 'v') {
      cur_.advance();
      return Expr::generator(1);
    }
    if (c == 'u') {
      cur_.advance();
      if (!std::isdigit(static_cast<unsigned char>(cur_.peek_raw()))) return Expr::generator(0);
      Integer k = cur_.digits();
      if (k < 1 || !k.fits_slong_p()) cur_.fail("generator index must be at least 1");
      return Expr::generator(static_cast<std::size_t>(k.get_si() - 1));
    }
    if (c == 'e') {
      cur_.advance();
      cur_.expect('(');
      RationalPoly p = RationalPoly::parse_at(cur_);
      cur_.expect(')');
      return Expr::phase(std::move(p));
    }
    if (c == 'U') {
      cur_.advance();
      cur_.expect('(');
      Exponent lambda{cur_.signed_int()};
      while (cur_.accept(',')) lambda.push_back(cur_.signed_int());
      cur_.expect(')');
      return Expr::monomial(std::move(lambda));
    }
    if (c == '\0') cur_.fail("unexpected end of input");
    cur_.fail(std::string("unexpected character '") + c + "'");
  }

  detail::Cursor cur_;
};

}  // namespace

std::string Expr::to_string() const {
  switch (kind()) {
    case Kind::Generator:
      if (index() == 0) return "u";
      if (index() == 1) return "v";
      return "u" + std::to_string(index() + 1);
    case Kind::Monomial: {
      std::string s = "U(";
      for (std::size_t i = 0; i < lambda().size(); ++i) s += (i ? "," : "") + std::to_string(lambda()[i]);
      return s + ")";
    }
    case Kind::Phase:
      return "e(" + poly().to_string() + ")";
    case Kind::Number:
      return qtc::to_string(number_value());
    case Kind::Sum: {
      std::string s;
      for (std::size_t i = 0; i < terms().size(); ++i) {
        const auto& t = terms()[i];
        if (i == 0)
          s += t.negative ? "-" : "";
        else
          s += t.negative ? " - " : " + ";
        s += wrap(t.term, t.term.kind() == Kind::Sum);
      }
      return s;
    }
    case Kind::Product: {
      std::string s;
      for (std::size_t i = 0; i < children().size(); ++i) s += (i ? "*" : "") + wrap(children()[i], is_compound(children()[i]));
      return s;
    }
    case Kind::Power:
      return wrap(children()[0], is_compound(children()[0])) + "^" + std::to_string(exponent());
    case Kind::Adjoint:
      return wrap(children()[0], is_compound(children()[0])) + "'";
  }
  return {};
}

Expr Expr::parse(std::string_view text) { return Parser(text).run(); }

TorusElement evaluate(const Expr& e, const ThetaPtr& theta) {
  std::size_t n = theta->dimension();
  switch (e.kind()) {
    case Expr::Kind::Generator:
      if (e.index() >= n)
        throw InvalidArgument("unknown generator u" + std::to_string(e.index() + 1) + " in dimension " +
                              std::to_string(n));
      return TorusElement::generator(theta, e.index());
    case Expr::Kind::Monomial:
      if (e.lambda().size() != n) throw DimensionMismatch("monomial exponent does not match theta dimension");
      return TorusElement::monomial(theta, e.lambda());
    case Expr::Kind::Phase:
      return TorusElement::scalar(theta, Scalar::phase(PhaseExponent(e.poly())));
    case Expr::Kind::Number:
      return TorusElement::scalar(theta, Scalar(e.number_value()));
    case Expr::Kind::Sum: {
      TorusElement acc(theta);
      for (const auto& t : e.terms()) {
        TorusElement x = evaluate(t.term, theta);
        if (t.negative)
          acc -= x;
        else
          acc += x;
      }
      return acc;
    }
    case Expr::Kind::Product: {
      TorusElement acc = evaluate(e.children()[0], theta);
      for (std::size_t i = 1; i < e.children().size(); ++i) acc = acc * evaluate(e.children()[i], theta);
      return acc;
    }
    case Expr::Kind::Power:
      return evaluate(e.children()[0], theta).power(e.exponent());
    case Expr::Kind::Adjoint:
      return evaluate(e.children()[0], theta).adjoint();
  }
  return TorusElement(theta);
}

TorusElement parse_expr(std::string_view text, const ThetaPtr& theta) { return evaluate(Expr::parse(text), theta); }

}  // namespace qtc
