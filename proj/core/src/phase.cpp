#include "qtc/phase.hpp"

#include "qtc/detail/cursor.hpp"
#include "qtc/errors.hpp"

namespace qtc {

RationalPoly::RationalPoly(const Rational& constant) {
  set(0, constant);
}

RationalPoly RationalPoly::monomial(unsigned degree, const Rational& coefficient) {
  RationalPoly p;
  p.set(degree, coefficient);
  return p;
}

void RationalPoly::set(unsigned degree, const Rational& value) {
  if (value == 0) coeffs_.erase(degree);
  else coeffs_[degree] = value;
}

Rational RationalPoly::coefficient(unsigned degree) const {
  auto it = coeffs_.find(degree);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

bool RationalPoly::is_constant() const {
  return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first == 0);
}

int RationalPoly::degree() const {
  return coeffs_.empty() ? -1 : static_cast<int>(coeffs_.rbegin()->first);
}

bool RationalPoly::is_integer_constant() const {
  return is_constant() && is_integer(constant());
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& other) {
  for (const auto& [d, c] : other.coeffs_) set(d, coefficient(d) + c);
  return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& other) {
  for (const auto& [d, c] : other.coeffs_) set(d, coefficient(d) - c);
  return *this;
}

RationalPoly& RationalPoly::operator*=(const Rational& factor) {
  if (factor == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [d, c] : coeffs_) c *= factor;
  return *this;
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
  RationalPoly r;
  for (const auto& [da, ca] : a.coeffs_)
    for (const auto& [db, cb] : b.coeffs_) r.set(da + db, r.coefficient(da + db) + ca * cb);
  return r;
}

RationalPoly RationalPoly::operator-() const {
  RationalPoly r = *this;
  for (auto& [d, c] : r.coeffs_) c = -c;
  return r;
}

std::strong_ordering operator<=>(const RationalPoly& a, const RationalPoly& b) {
  auto ia = a.coeffs_.begin();
  auto ib = b.coeffs_.begin();
  for (; ia != a.coeffs_.end() && ib != b.coeffs_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first <=> ib->first;
    int c = cmp(ia->second, ib->second);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (ia != a.coeffs_.end()) return std::strong_ordering::greater;
  if (ib != b.coeffs_.end()) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

namespace {

std::string term_text(unsigned degree, const Rational& c) {
  if (degree == 0) return to_string(c);
  std::string mono = degree == 1 ? "t" : "t^" + std::to_string(degree);
  const Integer& num = c.get_num();
  const Integer& den = c.get_den();
  std::string head;
  if (num == 1) head = mono;
  else if (num == -1) head = "-" + mono;
  else head = to_string(num) + "*" + mono;
  if (den != 1) head += "/" + to_string(den);
  return head;
}

}  // namespace

std::string RationalPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [d, c] : coeffs_) {
    std::string term = term_text(d, c);
    if (first) {
      out = term;
      first = false;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

namespace {

RationalPoly parse_sum(detail::Cursor& cur);

RationalPoly parse_factor(detail::Cursor& cur) {
  char c = cur.peek();
  if (c == '(') {
    cur.advance();
    RationalPoly inner = parse_sum(cur);
    cur.expect(')');
    return inner;
  }
  if (c == 't') {
    cur.advance();
    unsigned degree = 1;
    if (cur.accept('^')) {
      Integer d = cur.digits();
      if (!d.fits_uint_p()) cur.fail("degree out of range");
      degree = static_cast<unsigned>(d.get_ui());
    }
    return RationalPoly::monomial(degree, 1);
  }
  if (cur.peek_digit()) return RationalPoly(cur.unsigned_rational());
  cur.fail("expected number, 't' or '(' in polynomial");
}

RationalPoly parse_term(detail::Cursor& cur) {
  RationalPoly acc = parse_factor(cur);
  while (true) {
    if (cur.accept('*')) {
      acc = acc * parse_factor(cur);
    } else if (cur.peek() == '/') {
      cur.advance();
      Integer d = cur.digits();
      if (d == 0) cur.fail("division by zero");
      acc *= make_rational(1, d);
    } else {
      return acc;
    }
  }
}

RationalPoly parse_sum(detail::Cursor& cur) {
  bool negate = false;
  if (cur.accept('-')) negate = true;
  else cur.accept('+');
  RationalPoly acc = parse_term(cur);
  if (negate) acc = -acc;
  while (true) {
    if (cur.accept('+')) acc += parse_term(cur);
    else if (cur.accept('-')) acc -= parse_term(cur);
    else return acc;
  }
}

}  // namespace

RationalPoly RationalPoly::parse_at(detail::Cursor& cur) {
  return parse_sum(cur);
}

RationalPoly RationalPoly::parse(std::string_view text) {
  detail::Cursor cur(text);
  RationalPoly p = parse_sum(cur);
  cur.expect_end();
  return p;
}

PhaseExponent::PhaseExponent(const RationalPoly& raw) : poly_(raw) {
  Rational c = raw.constant();
  poly_ += RationalPoly(frac(c) - c);
}

RationalPoly PhaseExponent::transcendental_part() const {
  return poly_ - RationalPoly(poly_.constant());
}

PhaseExponent PhaseExponent::operator-() const {
  return PhaseExponent(-poly_);
}

PhaseExponent& PhaseExponent::operator+=(const PhaseExponent& other) {
  *this = PhaseExponent(poly_ + other.poly_);
  return *this;
}

PhaseExponent PhaseExponent::times(const Integer& k) const {
  return PhaseExponent(poly_ * Rational(k));
}

}  // namespace qtc
