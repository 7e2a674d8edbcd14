#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace qtc {

using Integer = mpz_class;
using Rational = mpq_class;

/// Builds a canonical rational num/den. Throws InvalidArgument when den == 0.
Rational make_rational(const Integer& num, const Integer& den = 1);

/// Canonical "p/q" or "p" text.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Parses "p", "-p" or "p/q" with optional leading sign. Whole input must be consumed.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

Integer floor(const Rational& q);

/// q - floor(q), in [0, 1).
Rational frac(const Rational& q);

bool is_integer(const Rational& q);

/// Converts to int64, throwing InvalidArgument if the value does not fit.
std::int64_t to_int64(const Integer& z);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

}  // namespace qtc
