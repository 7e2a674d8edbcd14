#include "qtc/torus.hpp"

#include <algorithm>
#include <utility>

#include "qtc/errors.hpp"

namespace qtc {

ThetaMatrix::ThetaMatrix(std::size_t n) : n_(n), data_(n * n) {}

ThetaMatrix::ThetaMatrix(const std::vector<std::vector<RationalPoly>>& entries) : ThetaMatrix(entries.size()) {
  for (std::size_t k = 0; k < n_; ++k) {
    if (entries[k].size() != n_) throw DimensionMismatch("theta matrix must be square");
    for (std::size_t l = 0; l < n_; ++l) data_[k * n_ + l] = entries[k][l];
  }
  for (std::size_t k = 0; k < n_; ++k)
    for (std::size_t l = 0; l < n_; ++l)
      if ((*this)(k, l) != -(*this)(l, k)) throw InvalidArgument("theta matrix must be skew-symmetric");
}

ThetaMatrix ThetaMatrix::two(const RationalPoly& theta12) {
  return ThetaMatrix({{RationalPoly(), theta12}, {-theta12, RationalPoly()}});
}

RationalPoly ThetaMatrix::pairing(const Exponent& lambda, const Exponent& mu) const {
  if (lambda.size() != n_ || mu.size() != n_) throw DimensionMismatch("exponent dimension does not match theta");
  RationalPoly s;
  for (std::size_t k = 0; k < n_; ++k) {
    if (lambda[k] == 0) continue;
    for (std::size_t l = 0; l < n_; ++l) {
      if (mu[l] == 0 || k == l) continue;
      s += (*this)(k, l) * Rational(Integer(static_cast<long>(lambda[k])) * static_cast<long>(mu[l]));
    }
  }
  return s;
}

RationalPoly ThetaMatrix::twist(const Exponent& lambda, const Exponent& mu) const {
  if (lambda.size() != n_ || mu.size() != n_) throw DimensionMismatch("exponent dimension does not match theta");
  RationalPoly s;
  for (std::size_t k = 1; k < n_; ++k) {
    if (lambda[k] == 0) continue;
    for (std::size_t l = 0; l < k; ++l) {
      if (mu[l] == 0) continue;
      s += (*this)(k, l) * Rational(Integer(static_cast<long>(lambda[k])) * static_cast<long>(mu[l]));
    }
  }
  return s;
}

GaugeParameter ThetaMatrix::inner_parameter(const Exponent& mu) const {
  if (mu.size() != n_) throw DimensionMismatch("exponent dimension does not match theta");
  GaugeParameter s(n_);
  for (std::size_t l = 0; l < n_; ++l)
    for (std::size_t k = 0; k < n_; ++k)
      if (mu[k] != 0) s[l] += (*this)(k, l) * Rational(static_cast<long>(mu[k]));
  return s;
}

bool ThetaMatrix::quite_irrational() const {
  // lambda^T theta is a trivial phase vector for some nonzero integer lambda
  // exactly when the positive-degree coefficient matrices have a common
  // nonzero left kernel (scaling clears the constant part).
  unsigned max_deg = 0;
  for (const auto& p : data_)
    if (p.degree() > 0) max_deg = std::max(max_deg, static_cast<unsigned>(p.degree()));
  std::vector<RationalVector> rows(n_);
  for (std::size_t k = 0; k < n_; ++k)
    for (unsigned d = 1; d <= max_deg; ++d)
      for (std::size_t l = 0; l < n_; ++l) rows[k].push_back((*this)(k, l).coefficient(d));
  std::size_t width = n_ * max_deg;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < width && rank < n_; ++c) {
    std::size_t p = rank;
    while (p < n_ && rows[p][c] == 0) ++p;
    if (p == n_) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t i = 0; i < n_; ++i) {
      if (i == rank || rows[i][c] == 0) continue;
      Rational f = rows[i][c] / rows[rank][c];
      for (std::size_t j = c; j < width; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank == n_;
}

std::string ThetaMatrix::to_string() const {
  std::string out = "[";
  for (std::size_t k = 0; k < n_; ++k) {
    if (k) out += ",";
    out += "[";
    for (std::size_t l = 0; l < n_; ++l) {
      if (l) out += ",";
      out += "\"" + (*this)(k, l).to_string() + "\"";
    }
    out += "]";
  }
  return out + "]";
}

ThetaPtr make_theta(ThetaMatrix theta) {
  return std::make_shared<const ThetaMatrix>(std::move(theta));
}

TorusElement TorusElement::monomial(const ThetaPtr& theta, const Exponent& lambda, const Scalar& c) {
  if (!theta) throw InvalidArgument("monomial needs a theta context");
  if (lambda.size() != theta->dimension()) throw DimensionMismatch("exponent dimension does not match theta");
  TorusElement e(theta);
  e.add_term(lambda, c);
  return e;
}

TorusElement TorusElement::scalar(const ThetaPtr& theta, const Scalar& c) {
  return monomial(theta, Exponent(theta->dimension(), 0), c);
}

TorusElement TorusElement::generator(const ThetaPtr& theta, std::size_t k) {
  if (k >= theta->dimension()) throw DimensionMismatch("generator index exceeds dimension");
  Exponent e(theta->dimension(), 0);
  e[k] = 1;
  return monomial(theta, e);
}

Scalar TorusElement::coefficient(const Exponent& lambda) const {
  auto it = terms_.find(lambda);
  return it == terms_.end() ? Scalar() : it->second;
}

bool TorusElement::is_unitary_monomial() const {
  return terms_.size() == 1 && terms_.begin()->second.as_phase().has_value();
}

void TorusElement::add_term(const Exponent& lambda, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(lambda, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void TorusElement::require_same_context(const TorusElement& other) const {
  if (!theta_ || !other.theta_ || theta_ == other.theta_) return;
  if (!(*theta_ == *other.theta_)) throw DimensionMismatch("operands live over different theta matrices");
}

TorusElement& TorusElement::operator+=(const TorusElement& other) {
  require_same_context(other);
  if (!theta_) theta_ = other.theta_;
  for (const auto& [l, c] : other.terms_) add_term(l, c);
  return *this;
}

TorusElement& TorusElement::operator-=(const TorusElement& other) {
  require_same_context(other);
  if (!theta_) theta_ = other.theta_;
  for (const auto& [l, c] : other.terms_) add_term(l, -c);
  return *this;
}

TorusElement operator*(const TorusElement& a, const TorusElement& b) {
  a.require_same_context(b);
  TorusElement out(a.theta_ ? a.theta_ : b.theta_);
  // Accumulate raw phase terms; cyclotomic reduction runs once per exponent.
  std::map<Exponent, Scalar::Terms> raw;
  for (const auto& [la, ca] : a.terms_)
    for (const auto& [lb, cb] : b.terms_) {
      Exponent sum(la.size());
      for (std::size_t i = 0; i < la.size(); ++i) sum[i] = la[i] + lb[i];
      PhaseExponent tw(out.theta_->twist(la, lb));
      auto& slot = raw[sum];
      for (const auto& [pa, ra] : ca.terms())
        for (const auto& [pb, rb] : cb.terms()) slot[pa + pb + tw] += ra * rb;
    }
  for (const auto& [l, terms] : raw) {
    Scalar c = Scalar::from_terms(terms);
    if (!c.is_zero()) out.terms_.emplace(l, std::move(c));
  }
  return out;
}

TorusElement TorusElement::operator-() const {
  TorusElement out(theta_);
  for (const auto& [l, c] : terms_) out.terms_.emplace(l, -c);
  return out;
}

TorusElement TorusElement::scaled(const Scalar& c) const {
  TorusElement out(theta_);
  for (const auto& [l, x] : terms_) out.add_term(l, x * c);
  return out;
}

TorusElement TorusElement::adjoint() const {
  TorusElement out(theta_);
  for (const auto& [l, c] : terms_) {
    Exponent neg(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) neg[i] = -l[i];
    out.add_term(neg, c.conj().rotated(PhaseExponent(theta_->twist(l, l))));
  }
  return out;
}

TorusElement TorusElement::power(std::int64_t k) const {
  if (!theta_) throw InvalidArgument("power of an element without theta context");
  TorusElement base = *this;
  if (k < 0) {
    if (!is_unitary_monomial()) throw InvalidArgument("negative power of a non-unitary element");
    base = adjoint();
    k = -k;
  }
  TorusElement acc = TorusElement::scalar(theta_, Scalar::one());
  for (std::int64_t i = 0; i < k; ++i) acc = acc * base;
  return acc;
}

bool operator==(const TorusElement& a, const TorusElement& b) {
  if (a.theta_ && b.theta_ && a.theta_ != b.theta_ && !(*a.theta_ == *b.theta_)) return false;
  return a.terms_ == b.terms_;
}

namespace {

std::string monomial_text(const Exponent& l) {
  bool zero = std::all_of(l.begin(), l.end(), [](std::int64_t x) { return x == 0; });
  if (zero) return "1";
  std::size_t nonzero = 0, idx = 0;
  for (std::size_t i = 0; i < l.size(); ++i)
    if (l[i] != 0) {
      ++nonzero;
      idx = i;
    }
  if (nonzero == 1 && l[idx] == 1) {
    if (idx == 0) return "u";
    if (idx == 1) return "v";
    return "u" + std::to_string(idx + 1);
  }
  std::string out = "U(";
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(l[i]);
  }
  return out + ")";
}

}  // namespace

std::string TorusElement::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::string> pieces;
  for (const auto& [l, c] : terms_) {
    std::string mono = monomial_text(l);
    if (mono == "1") {
      pieces.push_back(c.to_string());
      continue;
    }
    const auto& ct = c.terms();
    if (ct.size() == 1) {
      const auto& [p, r] = *ct.begin();
      if (p.is_trivial() && r == 1) pieces.push_back(mono);
      else if (p.is_trivial() && r == -1) pieces.push_back("-" + mono);
      else pieces.push_back(c.to_string() + "*" + mono);
    } else {
      pieces.push_back("(" + c.to_string() + ")*" + mono);
    }
  }
  std::string out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (i == 0) out = pieces[i];
    else if (pieces[i].front() == '-') out += " - " + pieces[i].substr(1);
    else out += " + " + pieces[i];
  }
  return out;
}

TorusElement monomial(const ThetaPtr& theta, const Exponent& lambda) {
  return TorusElement::monomial(theta, lambda);
}

TorusElement multiply(const TorusElement& a, const TorusElement& b) {
  return a * b;
}

TorusElement adjoint(const TorusElement& a) {
  return a.adjoint();
}

TorusElement gauge(const TorusElement& a, const GaugeParameter& s) {
  if (s.size() != a.dimension() && !a.is_zero()) throw DimensionMismatch("gauge parameter has wrong length");
  TorusElement out(a.theta_ptr());
  for (const auto& [l, c] : a.terms()) {
    RationalPoly ph;
    for (std::size_t k = 0; k < l.size(); ++k)
      if (l[k] != 0) ph += s[k] * Rational(static_cast<long>(l[k]));
    out.add_term(l, c.rotated(PhaseExponent(ph)));
  }
  return out;
}

TorusElement lattice_transform(const TorusElement& a, const IntMatrix& M) {
  if (a.dimension() != 2 || M.rows() != 2 || M.cols() != 2)
    throw DimensionMismatch("lattice_transform is defined on the quantum 2-torus only");
  if (M.determinant() != 1) throw InvalidArgument("lattice_transform needs det M = 1");
  const ThetaPtr& th = a.theta_ptr();
  TorusElement img_u = TorusElement::monomial(th, {to_int64(M(0, 0)), to_int64(M(0, 1))});
  TorusElement img_v = TorusElement::monomial(th, {to_int64(M(1, 0)), to_int64(M(1, 1))});
  TorusElement out(th);
  for (const auto& [l, c] : a.terms()) out += (img_u.power(l[0]) * img_v.power(l[1])).scaled(c);
  return out;
}

TorusElement inner_ad(const Exponent& mu, const TorusElement& a) {
  TorusElement w = TorusElement::monomial(a.theta_ptr(), mu);
  return w * a * w.adjoint();
}

TorusElement isotypic_project(const TorusElement& a, const std::function<bool(const Exponent&)>& keep) {
  TorusElement out(a.theta_ptr());
  for (const auto& [l, c] : a.terms())
    if (keep(l)) out.add_term(l, c);
  return out;
}

std::vector<Exponent> exponent_box(std::size_t n, std::int64_t bound) {
  std::vector<Exponent> out;
  if (bound < 0) return out;
  Exponent cur(n, -bound);
  while (true) {
    out.push_back(cur);
    std::size_t i = n;
    while (i > 0 && cur[i - 1] == bound) {
      cur[i - 1] = -bound;
      --i;
    }
    if (i == 0) return out;
    ++cur[i - 1];
  }
}

TorusAutomorphism::TorusAutomorphism(ThetaPtr theta, GaugeParameter s, IntMatrix M, Exponent mu)
    : theta_(std::move(theta)), s_(std::move(s)), M_(std::move(M)), mu_(std::move(mu)) {
  std::size_t n = theta_->dimension();
  if (s_.size() != n || M_.rows() != n || M_.cols() != n || mu_.size() != n)
    throw DimensionMismatch("automorphism data does not match theta dimension");
  if (M_ != IntMatrix::identity(n) && n != 2)
    throw DimensionMismatch("lattice part is only available on the quantum 2-torus");
  if (M_.determinant() != 1) throw InvalidArgument("automorphism matrix must have determinant 1");
}

TorusAutomorphism TorusAutomorphism::identity(const ThetaPtr& theta) {
  std::size_t n = theta->dimension();
  return TorusAutomorphism(theta, GaugeParameter(n), IntMatrix::identity(n), Exponent(n, 0));
}

TorusElement TorusAutomorphism::apply(const TorusElement& a) const {
  std::size_t n = theta_->dimension();
  TorusElement x = M_ == IntMatrix::identity(n) ? a : lattice_transform(a, M_);
  x = gauge(x, s_);
  if (std::any_of(mu_.begin(), mu_.end(), [](std::int64_t m) { return m != 0; })) x = inner_ad(mu_, x);
  return x;
}

TorusElement TorusAutomorphism::apply_inverse(const TorusElement& a) const {
  // U(lambda) goes to a phase times U(M^T lambda).
  IntMatrix Mt = M_.transpose();
  RationalMatrix inv = rational_inverse(Mt);
  TorusElement out(theta_);
  for (const auto& [nu, c] : a.terms()) {
    Exponent lambda(nu.size());
    for (std::size_t i = 0; i < nu.size(); ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < nu.size(); ++j) s += inv[i][j] * Rational(static_cast<long>(nu[j]));
      lambda[i] = to_int64(s.get_num());
    }
    TorusElement img = apply(TorusElement::monomial(theta_, lambda));
    if (img.terms().size() != 1 || img.terms().begin()->first != nu)
      throw ConsistencyError("automorphism does not map monomials to monomials");
    out.add_term(lambda, c * img.terms().begin()->second.conj());
  }
  return out;
}

}  // namespace qtc
