#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "qtc/rational.hpp"

namespace qtc {

namespace detail {
class Cursor;
}

/// Exact polynomial in the formal variable t (standing for theta) with
/// rational coefficients. No reduction modulo the integers happens here;
/// theta matrices and gauge parameters are stored in this form.
class RationalPoly {
 public:
  RationalPoly() = default;
  RationalPoly(const Rational& constant);  // NOLINT(google-explicit-constructor)
  RationalPoly(std::int64_t constant) : RationalPoly(Rational(constant)) {}  // NOLINT

  static RationalPoly t() { return monomial(1, 1); }
  static RationalPoly monomial(unsigned degree, const Rational& coefficient);

  const std::map<unsigned, Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(unsigned degree) const;
  Rational constant() const { return coefficient(0); }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const;
  /// -1 for the zero polynomial.
  int degree() const;

  /// True iff the polynomial is an integer constant.
  bool is_integer_constant() const;

  RationalPoly& operator+=(const RationalPoly& other);
  RationalPoly& operator-=(const RationalPoly& other);
  RationalPoly& operator*=(const Rational& factor);
  friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
  friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
  friend RationalPoly operator*(RationalPoly a, const Rational& k) { return a *= k; }
  friend RationalPoly operator*(const Rational& k, RationalPoly a) { return a *= k; }
  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
  RationalPoly operator-() const;

  friend bool operator==(const RationalPoly&, const RationalPoly&) = default;
  friend std::strong_ordering operator<=>(const RationalPoly& a, const RationalPoly& b);

  /// Canonical text, increasing degree: "1/4 + t^2", "-t", "t/2", "3*t/2", "0".
  std::string to_string() const;
  static RationalPoly parse(std::string_view text);
  /// Parses a polynomial starting at the cursor (used by the expression grammar).
  static RationalPoly parse_at(detail::Cursor& cur);

 private:
  void set(unsigned degree, const Rational& value);

  std::map<unsigned, Rational> coeffs_;
};

/// Exponent p(t) of the unit phase e(p) = exp(2 pi i p(theta)).
///
/// Canonical form: the constant coefficient lies in [0, 1) and no zero
/// coefficients are stored. Because theta is treated as a formal
/// transcendental, e(p) == 1 exactly when the canonical form is zero.
class PhaseExponent {
 public:
  PhaseExponent() = default;
  explicit PhaseExponent(const RationalPoly& raw);
  explicit PhaseExponent(const Rational& constant) : PhaseExponent(RationalPoly(constant)) {}

  const RationalPoly& poly() const { return poly_; }
  bool is_trivial() const { return poly_.is_zero(); }

  /// The part of the exponent of degree >= 1.
  RationalPoly transcendental_part() const;
  Rational root_of_unity_part() const { return poly_.constant(); }

  PhaseExponent operator-() const;
  PhaseExponent& operator+=(const PhaseExponent& other);
  friend PhaseExponent operator+(PhaseExponent a, const PhaseExponent& b) { return a += b; }
  friend PhaseExponent operator-(PhaseExponent a, const PhaseExponent& b) { return a += -b; }
  /// k-th power of the phase.
  PhaseExponent times(const Integer& k) const;

  friend bool operator==(const PhaseExponent&, const PhaseExponent&) = default;
  friend std::strong_ordering operator<=>(const PhaseExponent& a, const PhaseExponent& b) {
    return a.poly_ <=> b.poly_;
  }

  std::string to_string() const { return poly_.to_string(); }
  /// Parses any polynomial text and canonicalizes it.
  static PhaseExponent parse(std::string_view text) { return PhaseExponent(RationalPoly::parse(text)); }

 private:
  RationalPoly poly_;
};

/// Group law of the phase group.
inline PhaseExponent phase_combine(const PhaseExponent& p, const PhaseExponent& q) { return p + q; }
inline bool phase_is_trivial(const PhaseExponent& p) { return p.is_trivial(); }

}  // namespace qtc
