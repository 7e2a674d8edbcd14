#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "qtc/errors.hpp"
#include "qtc/rational.hpp"

namespace qtc::detail {

// Hand-rolled scanner shared by the polynomial, scalar and expression parsers.
class Cursor {
 public:
  explicit Cursor(std::string_view src) : src_(src) {}

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= src_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  // No whitespace skipping: used for tokens such as "u12".
  char peek_raw() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool peek_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

  Integer digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return Integer(std::string(src_.substr(start, pos_ - start)), 10);
  }

  // digits ['/' digits]
  Rational unsigned_rational() {
    Integer num = digits();
    std::size_t save = pos_;
    if (accept('/')) {
      if (!peek_digit()) {
        pos_ = save;
        return Rational(num);
      }
      Integer den = digits();
      if (den == 0) fail("zero denominator");
      return make_rational(num, den);
    }
    return Rational(num);
  }

  std::int64_t signed_int() {
    bool negative = false;
    if (accept('-')) negative = true;
    else accept('+');
    Integer z = digits();
    if (negative) z = -z;
    if (!z.fits_slong_p()) fail("integer out of range");
    return z.get_si();
  }

  std::size_t pos() const { return pos_; }
  void set_pos(std::size_t p) { pos_ = p; }
  void advance() { ++pos_; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void expect_end() {
    if (!at_end()) fail("unexpected trailing input");
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace qtc::detail
