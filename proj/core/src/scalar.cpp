#include "qtc/scalar.hpp"

#include <mutex>
#include <vector>

#include "qtc/detail/cursor.hpp"
#include "qtc/errors.hpp"

namespace qtc {

namespace {

using IntPoly = std::vector<Integer>;  // coefficient of x^i at index i

// Exact division of integer polynomials, divisor monic.
IntPoly divide_exact(IntPoly num, const IntPoly& den) {
  std::size_t dn = den.size() - 1;
  IntPoly q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    Integer c = num[i];
    q[i - dn] = c;
    if (c != 0)
      for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return q;
}

const IntPoly& cyclotomic(unsigned long n) {
  static std::mutex mu;
  static std::map<unsigned long, IntPoly> cache;
  std::lock_guard<std::mutex> lock(mu);
  // Recursive calls below would deadlock; compute divisors bottom-up instead.
  std::vector<unsigned long> divisors;
  for (unsigned long d = 1; d <= n; ++d)
    if (n % d == 0) divisors.push_back(d);
  for (unsigned long d : divisors) {
    if (cache.count(d)) continue;
    IntPoly p(d + 1, 0);
    p[0] = -1;
    p[d] = 1;
    for (unsigned long e = 1; e < d; ++e)
      if (d % e == 0) p = divide_exact(p, cache.at(e));
    cache.emplace(d, std::move(p));
  }
  return cache.at(n);
}

}  // namespace

bool root_of_unity_sum_is_zero(const std::map<Rational, Rational>& terms) {
  Integer L = 1;
  for (const auto& [c, r] : terms) L = lcm(L, frac(c).get_den());
  if (!L.fits_ulong_p() || L > 1000000) throw InvalidArgument("root of unity order too large");
  unsigned long n = L.get_ui();
  std::vector<Rational> f(n, 0);
  for (const auto& [c, r] : terms) {
    Rational k = frac(c) * Rational(L);
    f[k.get_num().get_ui()] += r;
  }
  const IntPoly& phi = cyclotomic(n);
  std::size_t dn = phi.size() - 1;
  for (std::size_t i = f.size(); i-- > dn;) {
    Rational c = f[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) f[i - dn + j] -= c * Rational(phi[j]);
  }
  for (std::size_t i = 0; i < dn && i < f.size(); ++i)
    if (f[i] != 0) return false;
  return true;
}

Scalar::Scalar(const Rational& r) {
  if (r != 0) terms_.emplace(PhaseExponent(), r);
}

Scalar Scalar::phase(const PhaseExponent& p, const Rational& coefficient) {
  Scalar s;
  s.add_term(p, coefficient);
  s.canonicalize();
  return s;
}

Scalar Scalar::from_terms(const Terms& raw) {
  Scalar s;
  for (const auto& [p, r] : raw) s.add_term(p, r);
  s.canonicalize();
  return s;
}

void Scalar::add_term(const PhaseExponent& p, const Rational& r) {
  if (r == 0) return;
  // e(x + 1/2) = -e(x): fold the exact half shift into the sign.
  if (p.root_of_unity_part() == Rational(1, 2)) {
    PhaseExponent q(p.transcendental_part());
    terms_[q] -= r;
    return;
  }
  terms_[p] += r;
}

void Scalar::canonicalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0) it = terms_.erase(it);
    else ++it;
  }
  std::map<RationalPoly, std::vector<PhaseExponent>> groups;
  for (const auto& [p, r] : terms_) groups[p.transcendental_part()].push_back(p);
  for (const auto& [tp, members] : groups) {
    if (members.size() < 2) continue;
    std::map<Rational, Rational> sum;
    for (const auto& p : members) sum[p.root_of_unity_part()] += terms_.at(p);
    if (root_of_unity_sum_is_zero(sum))
      for (const auto& p : members) terms_.erase(p);
  }
}

bool Scalar::is_one() const {
  return *this == Scalar::one();
}

std::optional<PhaseExponent> Scalar::as_phase() const {
  if (terms_.empty()) return std::nullopt;
  if (terms_.size() == 1) {
    const auto& [p, r] = *terms_.begin();
    if (r == 1) return p;
    if (r == -1) return p + PhaseExponent(Rational(1, 2));
    return std::nullopt;
  }
  RationalPoly tp = terms_.begin()->first.transcendental_part();
  Integer L = 1;
  for (const auto& [p, r] : terms_) {
    if (p.transcendental_part() != tp) return std::nullopt;
    L = lcm(L, p.root_of_unity_part().get_den());
  }
  // Roots of unity in Q(zeta_L) are the 2L-th roots of unity.
  Integer order = 2 * L;
  if (order > 20000) return std::nullopt;
  for (Integer j = 0; j < order; ++j) {
    PhaseExponent cand(tp + RationalPoly(make_rational(j, order)));
    if (*this == Scalar::phase(cand)) return cand;
  }
  return std::nullopt;
}

Scalar& Scalar::operator+=(const Scalar& other) {
  for (const auto& [p, r] : other.terms_) add_term(p, r);
  canonicalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
  for (const auto& [p, r] : other.terms_) add_term(p, -r);
  canonicalize();
  return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar out;
  for (const auto& [pa, ra] : a.terms_)
    for (const auto& [pb, rb] : b.terms_) out.add_term(pa + pb, ra * rb);
  out.canonicalize();
  return out;
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  for (auto& [p, r] : out.terms_) r = -r;
  return out;
}

Scalar Scalar::conj() const {
  Scalar out;
  for (const auto& [p, r] : terms_) out.add_term(-p, r);
  out.canonicalize();
  return out;
}

Scalar Scalar::rotated(const PhaseExponent& q) const {
  Scalar out;
  for (const auto& [p, r] : terms_) out.add_term(p + q, r);
  out.canonicalize();
  return out;
}

bool Scalar::identical(const Scalar& other) const {
  return terms_ == other.terms_;
}

std::string Scalar::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [p, r] : terms_) {
    std::string term;
    if (p.is_trivial()) term = qtc::to_string(r);
    else if (r == 1) term = "e(" + p.to_string() + ")";
    else if (r == -1) term = "-e(" + p.to_string() + ")";
    else term = qtc::to_string(r) + "*e(" + p.to_string() + ")";
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

// factor := unsigned_rational | 'e' '(' poly ')'
Scalar parse_scalar_factor(detail::Cursor& cur) {
  if (cur.peek_digit()) return Scalar(cur.unsigned_rational());
  if (cur.accept('e')) {
    cur.expect('(');
    RationalPoly p = RationalPoly::parse_at(cur);
    cur.expect(')');
    return Scalar::phase(PhaseExponent(p));
  }
  cur.fail("expected number or e(...) in scalar");
}

Scalar parse_scalar_term(detail::Cursor& cur) {
  Scalar acc = parse_scalar_factor(cur);
  while (cur.accept('*')) acc *= parse_scalar_factor(cur);
  return acc;
}

}  // namespace

Scalar Scalar::parse_at(detail::Cursor& cur) {
  bool negate = false;
  if (cur.accept('-')) negate = true;
  else cur.accept('+');
  Scalar acc = parse_scalar_term(cur);
  if (negate) acc = -acc;
  while (true) {
    if (cur.accept('+')) acc += parse_scalar_term(cur);
    else if (cur.accept('-')) acc -= parse_scalar_term(cur);
    else return acc;
  }
}

Scalar Scalar::parse(std::string_view text) {
  detail::Cursor cur(text);
  Scalar s = parse_at(cur);
  cur.expect_end();
  return s;
}

}  // namespace qtc
