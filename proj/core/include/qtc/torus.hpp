#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qtc/lattice.hpp"
#include "qtc/phase.hpp"
#include "qtc/scalar.hpp"

namespace qtc {

using Exponent = std::vector<std::int64_t>;
using GaugeParameter = std::vector<RationalPoly>;

/// Skew-symmetric matrix of exponents theta_{kl} (unreduced polynomials in t).
class ThetaMatrix {
 public:
  ThetaMatrix() = default;
  explicit ThetaMatrix(std::size_t n);
  /// Rows of entries; must be skew-symmetric.
  explicit ThetaMatrix(const std::vector<std::vector<RationalPoly>>& entries);
  /// The 2 x 2 matrix with theta_{12} = theta12.
  static ThetaMatrix two(const RationalPoly& theta12);

  std::size_t dimension() const { return n_; }
  const RationalPoly& operator()(std::size_t k, std::size_t l) const { return data_[k * n_ + l]; }

  /// <lambda, theta mu> = sum_{k,l} lambda_k theta_{kl} mu_l.
  RationalPoly pairing(const Exponent& lambda, const Exponent& mu) const;
  /// Normal-ordering twist sum_{k>l} lambda_k theta_{kl} mu_l.
  RationalPoly twist(const Exponent& lambda, const Exponent& mu) const;
  /// Gauge parameter implementing Ad[U(mu)]: s_l = sum_k mu_k theta_{kl}.
  GaugeParameter inner_parameter(const Exponent& mu) const;

  /// For every nonzero lambda some mu has a nontrivial phase <lambda, theta mu>.
  bool quite_irrational() const;

  std::string to_string() const;
  friend bool operator==(const ThetaMatrix&, const ThetaMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<RationalPoly> data_;
};

using ThetaPtr = std::shared_ptr<const ThetaMatrix>;

/// Finitely supported element sum_lambda c_lambda U(lambda) of the quantum
/// torus, with U(lambda) = u_1^{lambda_1} ... u_n^{lambda_n}.
class TorusElement {
 public:
  using Terms = std::map<Exponent, Scalar>;

  TorusElement() = default;
  explicit TorusElement(ThetaPtr theta) : theta_(std::move(theta)) {}

  static TorusElement monomial(const ThetaPtr& theta, const Exponent& lambda, const Scalar& c = Scalar::one());
  static TorusElement scalar(const ThetaPtr& theta, const Scalar& c);
  static TorusElement generator(const ThetaPtr& theta, std::size_t k);  // 0-based

  const ThetaPtr& theta_ptr() const { return theta_; }
  const ThetaMatrix& theta() const { return *theta_; }
  std::size_t dimension() const { return theta_ ? theta_->dimension() : 0; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Scalar coefficient(const Exponent& lambda) const;
  /// Single term with a coefficient that is +-e(p)?
  bool is_unitary_monomial() const;

  TorusElement& operator+=(const TorusElement& other);
  TorusElement& operator-=(const TorusElement& other);
  friend TorusElement operator+(TorusElement a, const TorusElement& b) { return a += b; }
  friend TorusElement operator-(TorusElement a, const TorusElement& b) { return a -= b; }
  friend TorusElement operator*(const TorusElement& a, const TorusElement& b);
  TorusElement operator-() const;
  TorusElement scaled(const Scalar& c) const;

  TorusElement adjoint() const;
  /// k-th power; negative k only for unitary monomials.
  TorusElement power(std::int64_t k) const;

  friend bool operator==(const TorusElement& a, const TorusElement& b);

  /// Text in the expression grammar, e.g. "e(-t)*U(1,1)", "u - 1/2*v".
  std::string to_string() const;

  /// Adds c * U(lambda) without checks on the theta context.
  void add_term(const Exponent& lambda, const Scalar& c);

 private:
  void require_same_context(const TorusElement& other) const;

  ThetaPtr theta_;
  Terms terms_;
};

ThetaPtr make_theta(ThetaMatrix theta);

TorusElement monomial(const ThetaPtr& theta, const Exponent& lambda);
TorusElement multiply(const TorusElement& a, const TorusElement& b);
TorusElement adjoint(const TorusElement& a);

/// U(lambda) -> e(<s, lambda>) U(lambda).
TorusElement gauge(const TorusElement& a, const GaugeParameter& s);

/// n = 2, det M = 1: u -> U(a, b), v -> U(c, d) extended multiplicatively
/// (negative powers through adjoints).
TorusElement lattice_transform(const TorusElement& a, const IntMatrix& M);

/// U(mu) a U(mu)^*.
TorusElement inner_ad(const Exponent& mu, const TorusElement& a);

TorusElement isotypic_project(const TorusElement& a, const std::function<bool(const Exponent&)>& keep);

/// Every lambda with |lambda|_inf <= bound, lexicographic.
std::vector<Exponent> exponent_box(std::size_t n, std::int64_t bound);

/// Composite Ad[U(mu)] o gauge(s) o lattice(M) on the quantum 2-torus (or
/// on the n-torus when M is the identity). Maps monomials to multiples of
/// monomials, which makes the inverse explicit.
class TorusAutomorphism {
 public:
  TorusAutomorphism(ThetaPtr theta, GaugeParameter s, IntMatrix M, Exponent mu);
  static TorusAutomorphism identity(const ThetaPtr& theta);

  const GaugeParameter& gauge_parameter() const { return s_; }
  const IntMatrix& matrix() const { return M_; }
  const Exponent& inner() const { return mu_; }

  TorusElement apply(const TorusElement& a) const;
  TorusElement apply_inverse(const TorusElement& a) const;

 private:
  ThetaPtr theta_;
  GaugeParameter s_;
  IntMatrix M_;
  Exponent mu_;
};

}  // namespace qtc
