#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "qtc/phase.hpp"
#include "qtc/rational.hpp"

namespace qtc {

namespace detail {
class Cursor;
}

/// Finite rational combination of unit phases, sum_i r_i e(p_i).
///
/// Storage is the formal combination keyed by canonical phases. Values are
/// compared exactly: e(p) for phases with distinct transcendental parts are
/// treated as linearly independent, and phases sharing a transcendental part
/// are compared modulo the cyclotomic relations among their root-of-unity
/// parts (so e(1/2) == -1 and 1 + e(1/3) + e(2/3) == 0). Groups whose value
/// vanishes are removed from storage.
class Scalar {
 public:
  using Terms = std::map<PhaseExponent, Rational>;

  Scalar() = default;
  Scalar(const Rational& r);  // NOLINT(google-explicit-constructor)
  Scalar(std::int64_t r) : Scalar(Rational(r)) {}  // NOLINT(google-explicit-constructor)

  static Scalar one() { return Scalar(Rational(1)); }
  static Scalar phase(const PhaseExponent& p, const Rational& coefficient = 1);
  /// Canonicalizes an arbitrary formal combination once.
  static Scalar from_terms(const Terms& raw);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;

  /// If the value is +-e(p) for a single phase, returns that phase.
  std::optional<PhaseExponent> as_phase() const;

  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  Scalar& operator*=(const Scalar& other) { return *this = *this * other; }
  Scalar operator-() const;

  /// Complex conjugate: phases negated, rational coefficients unchanged.
  Scalar conj() const;

  /// Multiplies every phase by e(p).
  Scalar rotated(const PhaseExponent& p) const;

  /// Value equality (see class comment).
  friend bool operator==(const Scalar& a, const Scalar& b) { return (a - b).is_zero(); }

  /// Same stored terms, not merely the same value.
  bool identical(const Scalar& other) const;

  /// "+"-joined terms "r*e(p(t))", e.g. "1 + e(t)", "-1/2*e(1/3 - t)".
  std::string to_string() const;
  static Scalar parse(std::string_view text);
  static Scalar parse_at(detail::Cursor& cur);

 private:
  void add_term(const PhaseExponent& p, const Rational& r);
  void canonicalize();

  Terms terms_;
};

inline Scalar scalar_add(const Scalar& a, const Scalar& b) { return a + b; }
inline Scalar scalar_mul(const Scalar& a, const Scalar& b) { return a * b; }
inline Scalar scalar_conj(const Scalar& a) { return a.conj(); }

/// True iff sum_i r_i exp(2 pi i c_i) == 0 for rational c_i.
bool root_of_unity_sum_is_zero(const std::map<Rational, Rational>& terms);

}  // namespace qtc
