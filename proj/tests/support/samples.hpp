#pragma once

#include <string>
#include <vector>

#include "qtc/smooth.hpp"

namespace qtc::samples {

struct SmoothSample {
  std::string label;
  std::vector<std::int64_t> factors;
  std::vector<OutSmoothElement> images;
};

inline Rational q(long p, long d) { return make_rational(p, d); }

// p = a + b*theta with a, b rational.
inline TorusPoint pt(const Rational& a, const Rational& b) { return TorusPoint(a, b); }

inline IntMatrix minus_identity() { return IntMatrix::from_rows({{-1, 0}, {0, -1}}); }
inline IntMatrix order_three() { return IntMatrix::from_rows({{0, -1}, {1, -1}}); }
inline IntMatrix order_three_alt() { return IntMatrix::from_rows({{-1, -1}, {1, 0}}); }

/// Homomorphisms with vanishing associator class, five or more per group.
inline std::vector<SmoothSample> smooth_samples() {
  const IntMatrix I = IntMatrix::identity(2);
  const TorusPoint zero;
  const TorusPair generic{pt(q(1, 3), q(2, 5)), pt(q(3, 7), 0)};
  std::vector<SmoothSample> s;
  s.push_back({"C2 constant half", {2}, {{{pt(q(1, 2), 0), zero}, I}}});
  s.push_back({"C2 theta half", {2}, {{{pt(0, q(1, 2)), zero}, I}}});
  s.push_back({"C2 mixed second slot", {2}, {{{zero, pt(q(1, 2), q(1, 2))}, I}}});
  s.push_back({"C2 flip", {2}, {{{zero, zero}, minus_identity()}}});
  s.push_back({"C2 flip with gauge", {2}, {{generic, minus_identity()}}});

  s.push_back({"C3 rotation", {3}, {{{zero, zero}, order_three()}}});
  s.push_back({"C3 rotation with gauge", {3}, {{{pt(q(1, 5), 0), pt(0, q(1, 7))}, order_three()}}});
  s.push_back({"C3 constant third", {3}, {{{pt(q(1, 3), 0), zero}, I}}});
  s.push_back({"C3 theta thirds", {3}, {{{pt(0, q(1, 3)), pt(0, q(2, 3))}, I}}});
  s.push_back({"C3 alternate rotation", {3}, {{{pt(q(2, 3), 0), zero}, order_three_alt()}}});

  s.push_back({"C2xC2 theta halves", {2, 2}, {{{pt(0, q(1, 2)), zero}, I}, {{zero, pt(0, q(1, 2))}, I}}});
  s.push_back({"C2xC2 constant halves", {2, 2}, {{{pt(q(1, 2), 0), zero}, I}, {{zero, pt(q(1, 2), 0)}, I}}});
  s.push_back({"C2xC2 flip and half", {2, 2}, {{{zero, zero}, minus_identity()}, {{pt(q(1, 2), 0), zero}, I}}});
  s.push_back({"C2xC2 gauged flip and theta halves", {2, 2},
               {{generic, minus_identity()}, {{pt(0, q(1, 2)), pt(0, q(1, 2))}, I}}});
  s.push_back({"C2xC2 gauged flip and constant halves", {2, 2},
               {{generic, minus_identity()}, {{pt(q(1, 2), 0), pt(q(1, 2), 0)}, I}}});
  s.push_back({"C2xC2 non-injective", {2, 2}, {{{pt(q(1, 2), 0), zero}, I}, {{pt(q(1, 2), 0), zero}, I}}});
  return s;
}

}  // namespace qtc::samples
