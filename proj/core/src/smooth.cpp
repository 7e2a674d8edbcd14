#include "qtc/smooth.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "qtc/errors.hpp"

namespace qtc {

namespace {

Rational as_rational(std::int64_t x) { return Rational(static_cast<long>(x)); }

const RationalPoly& theta12_of(const ThetaPtr& theta) {
  if (!theta || theta->dimension() != 2) throw DimensionMismatch("smooth coverings live on the quantum 2-torus");
  return (*theta)(0, 1);
}

void require_sl2(const IntMatrix& M) {
  if (M.rows() != 2 || M.cols() != 2) throw DimensionMismatch("expected a 2 x 2 matrix");
  if (M.determinant() != 1) throw InvalidArgument("matrix is not in SL(2,Z): " + M.to_string());
}

std::string theta_term(const Rational& b) {
  std::string s;
  Integer num = b.get_num();
  if (num == -1)
    s = "-theta";
  else if (num == 1)
    s = "theta";
  else
    s = qtc::to_string(num) + "*theta";
  if (b.get_den() != 1) s += "/" + qtc::to_string(b.get_den());
  return s;
}

// Particular solution of A x = b over Q (free variables zero), or nothing.
std::optional<RationalVector> solve_rectangular(RationalMatrix A, RationalVector b) {
  std::size_t m = A.size(), n = m ? A[0].size() : 0;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && A[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(A[p], A[r]);
    std::swap(b[p], b[r]);
    Rational inv = 1 / A[r][c];
    for (auto& x : A[r]) x *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || A[i][c] == 0) continue;
      Rational f = A[i][c];
      for (std::size_t j = c; j < n; ++j) A[i][j] -= f * A[r][j];
      b[i] -= f * b[r];
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m; ++i)
    if (b[i] != 0) return std::nullopt;
  RationalVector x(n, Rational(0));
  for (std::size_t i = 0; i < r; ++i) x[pivots[i]] = b[i];
  return x;
}

Scalar phase_scalar(const Rational& p) { return Scalar::phase(PhaseExponent(p)); }

}  // namespace

TorusPoint::TorusPoint(const Rational& a_, const Rational& b_) : a(frac(a_)), b(frac(b_)) {}

std::pair<Rational, Rational> TorusPoint::decompose(const RationalPoly& p, const RationalPoly& theta12) {
  RationalPoly T = theta12 - RationalPoly(theta12.constant());
  if (T.is_zero()) throw InvalidArgument("theta12 has no transcendental part");
  RationalPoly P = p - RationalPoly(p.constant());
  Rational b = 0;
  if (!P.is_zero()) {
    unsigned d = static_cast<unsigned>(T.degree());
    b = P.coefficient(d) / T.coefficient(d);
    if (P != T * b) throw InvalidArgument("exponent " + p.to_string() + " is not of the form a + b*theta");
  }
  return {p.constant() - b * theta12.constant(), b};
}

TorusPoint TorusPoint::from_poly(const RationalPoly& p, const RationalPoly& theta12) {
  auto [a, b] = decompose(p, theta12);
  return {a, b};
}

RationalPoly TorusPoint::to_poly(const RationalPoly& theta12) const { return RationalPoly(a) + theta12 * b; }

std::string TorusPoint::to_string() const {
  if (is_zero()) return "0";
  if (b == 0) return qtc::to_string(a);
  if (a == 0) return theta_term(b);
  return qtc::to_string(a) + " + " + theta_term(b);
}

GaugeParameter rho_action(const IntMatrix& M, const GaugeParameter& s) {
  if (!M.is_square() || M.rows() != s.size()) throw DimensionMismatch("gauge parameter does not match matrix");
  RationalMatrix inv = rational_inverse(M);
  GaugeParameter out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) out[i] += s[j] * inv[i][j];
  return out;
}

TorusPair rho_action(const IntMatrix& M, const TorusPair& w) {
  require_sl2(M);
  RationalMatrix inv = rational_inverse(M);
  TorusPair out;
  for (std::size_t i = 0; i < 2; ++i) {
    Rational a = 0, b = 0;
    for (std::size_t j = 0; j < 2; ++j) {
      a += inv[i][j] * w[j].a;
      b += inv[i][j] * w[j].b;
    }
    out[i] = TorusPoint(a, b);
  }
  return out;
}

OutSmoothElement::OutSmoothElement(TorusPair w_, IntMatrix M_) : w(std::move(w_)), M(std::move(M_)) {
  require_sl2(M);
  for (auto& p : w) p = TorusPoint(p.a, p.b);
}

bool OutSmoothElement::is_identity() const { return w[0].is_zero() && w[1].is_zero() && M == IntMatrix::identity(2); }

std::string OutSmoothElement::to_string() const {
  return "((" + w[0].to_string() + ", " + w[1].to_string() + "), " + M.to_string() + ")";
}

OutSmoothElement out_mul(const OutSmoothElement& x, const OutSmoothElement& y) {
  TorusPair r = rho_action(x.M, y.w);
  return OutSmoothElement({x.w[0] + r[0], x.w[1] + r[1]}, y.M * x.M);
}

OutSmoothElement out_inv(const OutSmoothElement& x) {
  TorusPair w;
  for (std::size_t i = 0; i < 2; ++i) {
    Rational a = 0, b = 0;
    for (std::size_t j = 0; j < 2; ++j) {
      a -= Rational(x.M(i, j)) * x.w[j].a;
      b -= Rational(x.M(i, j)) * x.w[j].b;
    }
    w[i] = TorusPoint(a, b);
  }
  RationalMatrix inv = rational_inverse(x.M);
  IntMatrix Mi(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) Mi(i, j) = inv[i][j].get_num();
  return OutSmoothElement(w, Mi);
}

OutSmoothElement out_pow(const OutSmoothElement& x, std::int64_t k) {
  OutSmoothElement base = k < 0 ? out_inv(x) : x;
  OutSmoothElement acc;
  for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) acc = out_mul(acc, base);
  return acc;
}

TorusAutomorphism realize(const ThetaPtr& theta, const TorusPair& lift, const IntMatrix& M) {
  const RationalPoly& t12 = theta12_of(theta);
  return TorusAutomorphism(theta, {lift[0].to_poly(t12), lift[1].to_poly(t12)}, M, Exponent{0, 0});
}

OutSmoothElement out_class_of_images(const ThetaPtr& theta, const TorusElement& image_u,
                                     const TorusElement& image_v) {
  const RationalPoly& t12 = theta12_of(theta);
  IntMatrix M(2, 2);
  std::array<RationalPoly, 2> p;
  const TorusElement* images[2] = {&image_u, &image_v};
  for (std::size_t k = 0; k < 2; ++k) {
    if (!images[k]->is_unitary_monomial()) throw ConsistencyError("image of a generator is not a unitary monomial");
    const auto& [lambda, c] = *images[k]->terms().begin();
    M(k, 0) = static_cast<long>(lambda[0]);
    M(k, 1) = static_cast<long>(lambda[1]);
    p[k] = c.as_phase()->poly();
  }
  if (M.determinant() != 1) throw ConsistencyError("images do not define an SL(2,Z) lattice part");
  GaugeParameter s = rho_action(M, GaugeParameter{p[0], p[1]});
  return OutSmoothElement({TorusPoint::from_poly(s[0], t12), TorusPoint::from_poly(s[1], t12)}, M);
}

HomomorphismReport check_homomorphism(const FiniteAbelianGroup& G, const std::vector<OutSmoothElement>& images) {
  if (images.size() != G.rank()) throw DimensionMismatch("one image per generator of the character group is required");
  HomomorphismReport r;
  r.commute = true;
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j)
      if (out_mul(images[i], images[j]) != out_mul(images[j], images[i])) r.commute = false;
  r.orders = true;
  for (std::size_t i = 0; i < images.size(); ++i)
    if (!out_pow(images[i], G.factors()[i]).is_identity()) r.orders = false;
  if (!r.valid()) return r;
  r.injective = true;
  for (const auto& chi : G.elements()) {
    OutSmoothElement x;
    for (std::size_t i = 0; i < chi.size(); ++i) x = out_mul(x, out_pow(images[i], chi[i]));
    if (!G.is_zero(chi) && x.is_identity()) r.injective = false;
    r.table.push_back(std::move(x));
  }
  return r;
}

TorusElement SigmaEntry::element(const ThetaPtr& theta) const {
  return TorusElement::monomial(theta, mu, Scalar::phase(phase));
}

SigmaTable compute_cocycle(const ThetaPtr& theta, const FiniteAbelianGroup& G,
                           const std::vector<OutSmoothElement>& table, const std::vector<TorusPair>& lifts) {
  const RationalPoly& t12 = theta12_of(theta);
  std::size_t n = G.elements().size();
  if (table.size() != n || lifts.size() != n) throw DimensionMismatch("one Out element and lift per character");
  std::vector<TorusAutomorphism> alpha;
  for (std::size_t i = 0; i < n; ++i) alpha.push_back(realize(theta, lifts[i], table[i].M));
  std::array<TorusElement, 2> gens = {TorusElement::generator(theta, 0), TorusElement::generator(theta, 1)};

  SigmaTable sigma(n, std::vector<SigmaEntry>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t k = G.index_of(G.add(G.elements()[i], G.elements()[j]));
      GaugeParameter p(2);
      std::array<TorusElement, 2> lhs;
      std::array<TorusElement, 2> rhs;
      for (std::size_t g = 0; g < 2; ++g) {
        lhs[g] = alpha[i].apply(alpha[j].apply(gens[g]));
        rhs[g] = alpha[k].apply(gens[g]);
        if (!lhs[g].is_unitary_monomial() || !rhs[g].is_unitary_monomial() ||
            lhs[g].terms().begin()->first != rhs[g].terms().begin()->first)
          throw ConsistencyError("lifts do not compose to the lift of the product");
        p[g] = (*lhs[g].terms().begin()->second.as_phase() - *rhs[g].terms().begin()->second.as_phase()).poly();
      }
      GaugeParameter d = rho_action(table[k].M, p);
      Exponent q(2);
      for (std::size_t g = 0; g < 2; ++g) {
        auto [a, b] = TorusPoint::decompose(d[g], t12);
        if (!is_integer(a) || !is_integer(b))
          throw ConsistencyError("composition defect is not inner: " + d[g].to_string());
        q[g] = to_int64(b.get_num());
      }
      SigmaEntry e{Exponent{q[1], -q[0]}, PhaseExponent()};
      for (std::size_t g = 0; g < 2; ++g)
        if (inner_ad(e.mu, rhs[g]) != lhs[g]) throw ConsistencyError("inner part of the defect does not match");
      sigma[i][j] = std::move(e);
    }
  }
  return sigma;
}

PhaseExponent associator(const ThetaPtr& theta, const FiniteAbelianGroup& G,
                         const std::vector<TorusAutomorphism>& alpha, const SigmaTable& sigma, std::size_t i,
                         std::size_t j, std::size_t k) {
  const auto& el = G.elements();
  std::size_t ij = G.index_of(G.add(el[i], el[j]));
  std::size_t jk = G.index_of(G.add(el[j], el[k]));
  TorusElement lhs = sigma[i][j].element(theta) * sigma[ij][k].element(theta);
  TorusElement rhs = alpha[i].apply(sigma[j][k].element(theta)) * sigma[i][jk].element(theta);
  TorusElement q = lhs * rhs.adjoint();
  if (!q.is_unitary_monomial() || q.terms().begin()->first != Exponent(2, 0))
    throw ConsistencyError("associator is not a scalar phase");
  return *q.terms().begin()->second.as_phase();
}

SigmaTable solve_associativity(const ThetaPtr& theta, const FiniteAbelianGroup& G,
                               const std::vector<TorusAutomorphism>& alpha, const SigmaTable& sigma,
                               AssociativityReport* report) {
  const auto& el = G.elements();
  std::size_t n = el.size();
  // Unknowns beta(i, j) for i, j != 0.
  auto var = [n](std::size_t i, std::size_t j) -> std::optional<std::size_t> {
    if (i == 0 || j == 0) return std::nullopt;
    return (i - 1) * (n - 1) + (j - 1);
  };
  std::size_t unknowns = (n - 1) * (n - 1);

  std::vector<std::vector<std::int64_t>> rows;
  std::vector<RationalPoly> rhs;
  bool associative = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        PhaseExponent A = associator(theta, G, alpha, sigma, i, j, k);
        if (!A.is_trivial()) associative = false;
        std::size_t ij = G.index_of(G.add(el[i], el[j]));
        std::size_t jk = G.index_of(G.add(el[j], el[k]));
        std::vector<std::int64_t> row(unknowns, 0);
        auto bump = [&](std::optional<std::size_t> v, std::int64_t s) {
          if (v) row[*v] += s;
        };
        bump(var(i, j), 1);
        bump(var(ij, k), 1);
        bump(var(j, k), -1);
        bump(var(i, jk), -1);
        rows.push_back(std::move(row));
        rhs.push_back(-A.poly());
      }

  AssociativityReport local;
  AssociativityReport& rep = report ? *report : local;
  rep = AssociativityReport{};
  rep.equations = rows.size();
  rep.unknowns = unknowns;
  rep.already_associative = associative;
  rep.correction.assign(n, std::vector<PhaseExponent>(n));
  if (associative) return sigma;

  std::vector<RationalPoly> beta(unknowns);
  std::set<unsigned> degrees;
  for (const auto& r : rhs)
    for (const auto& [d, c] : r.coefficients())
      if (d > 0) degrees.insert(d);

  RationalMatrix Aq(rows.size(), RationalVector(unknowns));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < unknowns; ++c) Aq[r][c] = as_rational(rows[r][c]);
  for (unsigned d : degrees) {
    RationalVector b;
    for (const auto& r : rhs) b.push_back(r.coefficient(d));
    auto x = solve_rectangular(Aq, b);
    if (!x) throw ObstructionError("associator has a non-removable transcendental part");
    for (std::size_t c = 0; c < unknowns; ++c) beta[c] += RationalPoly::monomial(d, (*x)[c]);
  }

  // Constant parts only need to match modulo Z: Smith form D = U C V.
  IntMatrix C(rows.size(), unknowns);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < unknowns; ++c) C(r, c) = static_cast<long>(rows[r][c]);
  SmithResult snf = smith_normal_form(C);
  std::size_t rank = 0;
  while (rank < std::min(C.rows(), C.cols()) && snf.D(rank, rank) != 0) ++rank;
  RationalVector y(C.rows(), Rational(0));
  for (std::size_t r = 0; r < C.rows(); ++r)
    for (std::size_t s = 0; s < C.rows(); ++s) y[r] += Rational(snf.U(r, s)) * rhs[s].constant();
  for (std::size_t r = rank; r < C.rows(); ++r)
    if (!is_integer(y[r])) throw ObstructionError("associator is not a coboundary modulo the integers");
  RationalVector c(unknowns, Rational(0));
  for (std::size_t r = 0; r < rank; ++r) c[r] = y[r] / Rational(snf.D(r, r));
  for (std::size_t r = 0; r < unknowns; ++r) {
    Rational v = 0;
    for (std::size_t s = 0; s < unknowns; ++s) v += Rational(snf.V(r, s)) * c[s];
    beta[r] += RationalPoly(v);
  }

  SigmaTable out = sigma;
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j) {
      PhaseExponent b(beta[*var(i, j)]);
      out[i][j].phase += b;
      rep.correction[i][j] = b;
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!associator(theta, G, alpha, out, i, j, k).is_trivial())
          throw ConsistencyError("corrected structure constants are still not associative");
  return out;
}

void GradedElement::add(std::size_t chi, const TorusElement& a) {
  if (a.is_zero()) return;
  auto [it, inserted] = components.try_emplace(chi, a);
  if (inserted) return;
  it->second += a;
  if (it->second.is_zero()) components.erase(it);
}

bool operator==(const GradedElement& x, const GradedElement& y) { return x.components == y.components; }

GradedElement& GradedElement::operator+=(const GradedElement& other) {
  for (const auto& [chi, a] : other.components) add(chi, a);
  return *this;
}

GradedElement GradedElement::scaled(const Scalar& c) const {
  GradedElement out;
  for (const auto& [chi, a] : components) out.add(chi, a.scaled(c));
  return out;
}

GradedSystem::GradedSystem(ThetaPtr theta, FiniteAbelianGroup G, std::vector<OutSmoothElement> phi,
                           std::vector<TorusPair> lifts, SigmaTable sigma)
    : theta_(std::move(theta)),
      G_(std::move(G)),
      phi_(std::move(phi)),
      lifts_(std::move(lifts)),
      sigma_(std::move(sigma)) {
  std::size_t n = G_.elements().size();
  if (phi_.size() != n || lifts_.size() != n || sigma_.size() != n)
    throw DimensionMismatch("graded system data does not match the group");
  for (std::size_t i = 0; i < n; ++i) alpha_.push_back(realize(theta_, lifts_[i], phi_[i].M));
}

GradedElement GradedSystem::unit(std::size_t chi) const {
  return embed(TorusElement::scalar(theta_, Scalar::one()), chi);
}

GradedElement GradedSystem::embed(const TorusElement& a, std::size_t chi) const {
  if (chi >= size()) throw InvalidArgument("character index out of range");
  GradedElement x;
  x.add(chi, a);
  return x;
}

GradedElement GradedSystem::multiply(const GradedElement& x, const GradedElement& y) const {
  const auto& el = G_.elements();
  GradedElement out;
  for (const auto& [i, a] : x.components)
    for (const auto& [j, b] : y.components) {
      std::size_t k = G_.index_of(G_.add(el[i], el[j]));
      out.add(k, a * alpha_[i].apply(b) * sigma_[i][j].element(theta_));
    }
  return out;
}

GradedElement GradedSystem::adjoint(const GradedElement& x) const {
  const auto& el = G_.elements();
  GradedElement out;
  for (const auto& [i, a] : x.components) {
    std::size_t inv = G_.index_of(G_.neg(el[i]));
    out.add(inv, sigma_[inv][i].element(theta_).adjoint() * alpha_[inv].apply(a.adjoint()));
  }
  return out;
}

GradedElement GradedSystem::act(const GroupElement& g, const GradedElement& x) const {
  GradedElement out;
  for (const auto& [i, a] : x.components)
    out.add(i, a.scaled(phase_scalar(G_.pairing(g, G_.elements()[i]))));
  return out;
}

OutSmoothElement picard_of(const GradedSystem& sys, std::size_t chi) {
  GradedElement e = sys.unit(chi);
  GradedElement e_star = sys.adjoint(e);
  std::array<TorusElement, 2> images;
  for (std::size_t k = 0; k < 2; ++k) {
    GradedElement y = sys.multiply(sys.multiply(e, sys.embed(TorusElement::generator(sys.theta(), k))), e_star);
    if (y.components.size() != 1 || y.components.begin()->first != 0)
      throw ConsistencyError("conjugation by a unit left the degree-zero part");
    images[k] = y.components.begin()->second;
  }
  return out_class_of_images(sys.theta(), images[0], images[1]);
}

GradedReport verify_graded_system(const GradedSystem& sys, const std::vector<GroupElement>& kernel) {
  GradedReport r;
  const auto& G = sys.group();
  const auto& el = G.elements();
  std::size_t n = sys.size();
  const ThetaPtr& th = sys.theta();
  TorusElement u = TorusElement::generator(th, 0);
  TorusElement v = TorusElement::generator(th, 1);
  TorusElement one = TorusElement::scalar(th, Scalar::one());
  auto fail = [&r](const std::string& m) {
    if (r.failures.size() < 16) r.failures.push_back(m);
  };

  r.graded = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      GradedElement p = sys.multiply(sys.embed(u, i), sys.embed(v, j));
      std::size_t k = G.index_of(G.add(el[i], el[j]));
      if (p.components.size() != 1 || p.components.begin()->first != k) {
        r.graded = false;
        fail("product of degrees " + std::to_string(i) + ", " + std::to_string(j) + " has the wrong degree");
      }
    }

  r.associative = true;
  TorusElement w = one + u * v;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        GradedElement a = sys.embed(u, i), b = sys.embed(v, j), c = sys.embed(w, k);
        GradedElement ei = sys.unit(i), ej = sys.unit(j), ek = sys.unit(k);
        if (sys.multiply(sys.multiply(ei, ej), ek) != sys.multiply(ei, sys.multiply(ej, ek)) ||
            sys.multiply(sys.multiply(a, b), c) != sys.multiply(a, sys.multiply(b, c))) {
          r.associative = false;
          fail("associativity fails on degrees (" + std::to_string(i) + "," + std::to_string(j) + "," +
               std::to_string(k) + ")");
        }
      }

  r.involution = true;
  r.unitary = true;
  for (std::size_t i = 0; i < n; ++i) {
    GradedElement x = sys.embed(u + v.scaled(Scalar(2)), i);
    if (sys.adjoint(sys.adjoint(x)) != x) {
      r.involution = false;
      fail("adjoint is not an involution in degree " + std::to_string(i));
    }
    for (std::size_t j = 0; j < n; ++j) {
      GradedElement a = sys.embed(u, i), b = sys.embed(v, j);
      if (sys.adjoint(sys.multiply(a, b)) != sys.multiply(sys.adjoint(b), sys.adjoint(a))) {
        r.involution = false;
        fail("adjoint is not anti-multiplicative");
      }
    }
    GradedElement e = sys.unit(i), es = sys.adjoint(e);
    if (sys.multiply(e, es) != sys.unit(0) || sys.multiply(es, e) != sys.unit(0)) {
      r.unitary = false;
      fail("e_chi is not unitary for chi index " + std::to_string(i));
    }
  }

  r.fixed_algebra = true;
  for (std::size_t i = 0; i < n; ++i) {
    GradedElement x = sys.embed(u, i);
    bool fixed = true;
    for (const auto& g : el)
      if (sys.act(g, x) != x) fixed = false;
    if (fixed != (i == 0)) {
      r.fixed_algebra = false;
      fail("degree " + std::to_string(i) + " has the wrong fixed-point behaviour");
    }
  }

  r.picard = true;
  std::vector<GroupElement> trivial;
  for (std::size_t i = 0; i < n; ++i) {
    OutSmoothElement cls;
    try {
      cls = picard_of(sys, i);
    } catch (const Error& ex) {
      r.picard = false;
      fail(ex.what());
      continue;
    }
    if (cls != sys.phi()[i]) {
      r.picard = false;
      fail("Picard class " + cls.to_string() + " differs from phi = " + sys.phi()[i].to_string());
    }
    if (cls.is_identity()) trivial.push_back(el[i]);
  }
  std::vector<GroupElement> expected = kernel;
  std::sort(expected.begin(), expected.end());
  r.non_inner = r.picard && trivial == expected;
  if (r.picard && !r.non_inner) fail("characters with inner Ad[e_chi] do not match the expected kernel");
  return r;
}

SmoothBuild build_smooth_covering(const ThetaPtr& theta, const FiniteAbelianGroup& G,
                                  const std::vector<OutSmoothElement>& images) {
  const RationalPoly& t12 = theta12_of(theta);
  if (t12.is_constant()) throw InvalidArgument("smooth coverings need an irrational theta");
  SmoothBuild out;
  out.homomorphism = check_homomorphism(G, images);
  if (!out.homomorphism.valid())
    throw InvalidArgument(out.homomorphism.commute ? "images do not satisfy the relations of the group"
                                                   : "images do not commute in Out");
  const auto& table = out.homomorphism.table;
  const auto& el = G.elements();

  if (!out.homomorphism.injective) {
    for (std::size_t i = 0; i < el.size(); ++i)
      if (table[i].is_identity()) out.kernel.push_back(el[i]);
    GroupQuotient q = quotient_by(G, out.kernel);
    std::vector<OutSmoothElement> q_images;
    for (std::size_t i = 0; i < q.quotient.rank(); ++i)
      q_images.push_back(table[G.index_of(q.section(q.quotient.generator(i)))]);
    SmoothBuild base = build_smooth_covering(theta, q.quotient, q_images);
    std::vector<std::size_t> proj;
    for (const auto& chi : el) proj.push_back(q.quotient.index_of(q.project(G, chi)));
    std::vector<TorusPair> lifts;
    SigmaTable sigma(el.size(), std::vector<SigmaEntry>(el.size()));
    for (std::size_t i = 0; i < el.size(); ++i) {
      if (base.system.phi()[proj[i]] != table[i]) throw ConsistencyError("phi does not factor through the quotient");
      lifts.push_back(base.system.lifts()[proj[i]]);
      for (std::size_t j = 0; j < el.size(); ++j) sigma[i][j] = base.system.sigma()[proj[i]][proj[j]];
    }
    out.associativity = base.associativity;
    out.reduced = true;
    out.system = GradedSystem(theta, G, table, std::move(lifts), std::move(sigma));
    out.report = verify_graded_system(out.system, out.kernel);
    return out;
  }

  out.kernel = {G.zero()};
  std::vector<TorusPair> lifts;
  for (const auto& x : table) lifts.push_back(x.w);
  SigmaTable sigma = compute_cocycle(theta, G, table, lifts);
  std::vector<TorusAutomorphism> alpha;
  for (std::size_t i = 0; i < el.size(); ++i) alpha.push_back(realize(theta, lifts[i], table[i].M));
  sigma = solve_associativity(theta, G, alpha, sigma, &out.associativity);
  out.system = GradedSystem(theta, G, table, std::move(lifts), std::move(sigma));
  out.report = verify_graded_system(out.system, out.kernel);
  return out;
}

ExtensionGroup::ExtensionGroup(FiniteAbelianGroup N, FiniteAbelianGroup H, Omega omega)
    : N_(std::move(N)), H_(std::move(H)) {
  const auto& hs = H_.elements();
  for (const auto& a : hs) {
    std::vector<GroupElement> row;
    for (const auto& b : hs) {
      GroupElement w = omega(a, b);
      if (w.size() != N_.rank()) throw DimensionMismatch("omega values must lie in N");
      row.push_back(N_.normalize(w));
    }
    omega_.push_back(std::move(row));
  }
  std::size_t z = H_.index_of(H_.zero());
  for (std::size_t a = 0; a < hs.size(); ++a) {
    if (!N_.is_zero(omega_[z][a]) || !N_.is_zero(omega_[a][z])) throw InvalidArgument("omega is not normalized");
    for (std::size_t b = 0; b < hs.size(); ++b) {
      if (omega_[a][b] != omega_[b][a]) throw InvalidArgument("omega is not symmetric");
      for (std::size_t c = 0; c < hs.size(); ++c) {
        std::size_t ab = H_.index_of(H_.add(hs[a], hs[b]));
        std::size_t bc = H_.index_of(H_.add(hs[b], hs[c]));
        if (N_.add(omega_[a][b], omega_[ab][c]) != N_.add(omega_[b][c], omega_[a][bc]))
          throw InvalidArgument("omega is not a 2-cocycle");
      }
    }
  }
  for (const auto& n : N_.elements())
    for (const auto& h : hs) elements_.emplace_back(n, h);

  // Presentation on generators (e_i, 0) and (0, f_j).
  std::size_t rn = N_.rank(), rh = H_.rank(), k = rn + rh;
  for (const auto& h : hs) {
    std::pair<GroupElement, GroupElement> acc{N_.zero(), H_.zero()};
    for (std::size_t j = 0; j < rh; ++j)
      for (std::int64_t t = 0; t < h[j]; ++t) acc = add(acc, {N_.zero(), H_.generator(j)});
    c_of_h_.push_back(acc.first);
  }
  IntMatrix R(k, k);
  for (std::size_t i = 0; i < rn; ++i) R(i, i) = static_cast<long>(N_.factors()[i]);
  for (std::size_t j = 0; j < rh; ++j) {
    std::pair<GroupElement, GroupElement> acc{N_.zero(), H_.zero()};
    for (std::int64_t t = 0; t < H_.factors()[j]; ++t) acc = add(acc, {N_.zero(), H_.generator(j)});
    for (std::size_t i = 0; i < rn; ++i) R(i, rn + j) = -static_cast<long>(acc.first[i]);
    R(rn + j, rn + j) = static_cast<long>(H_.factors()[j]);
  }
  SmithResult snf = smith_normal_form(R);
  for (std::size_t i = 0; i < k; ++i)
    if (snf.D(i, i) > 1) factors_.push_back(to_int64(snf.D(i, i)));
  IntMatrix Rt = R.transpose();
  QuotientGroup dual(Rt);
  for (const auto& w : dual.coset_reps()) {
    RationalVector wq;
    for (const auto& x : w) wq.emplace_back(x);
    characters_.push_back(solve_rational(Rt, wq));
  }
}

std::pair<GroupElement, GroupElement> ExtensionGroup::add(const std::pair<GroupElement, GroupElement>& x,
                                                          const std::pair<GroupElement, GroupElement>& y) const {
  const GroupElement& w = omega_[H_.index_of(x.second)][H_.index_of(y.second)];
  return {N_.add(N_.add(x.first, y.first), w), H_.add(x.second, y.second)};
}

std::int64_t ExtensionGroup::element_order(const std::pair<GroupElement, GroupElement>& x) const {
  std::pair<GroupElement, GroupElement> acc = x;
  std::int64_t k = 1;
  while (!(N_.is_zero(acc.first) && H_.is_zero(acc.second))) {
    acc = add(acc, x);
    ++k;
  }
  return k;
}

Rational ExtensionGroup::character(std::size_t chi, const std::pair<GroupElement, GroupElement>& x) const {
  const RationalVector& z = characters_.at(chi);
  const GroupElement& c = c_of_h_[H_.index_of(x.second)];
  Rational s = 0;
  for (std::size_t i = 0; i < N_.rank(); ++i) s += z[i] * as_rational(x.first[i] - c[i]);
  for (std::size_t j = 0; j < H_.rank(); ++j) s += z[N_.rank() + j] * as_rational(x.second[j]);
  return frac(s);
}

GroupElement ExtensionGroup::restrict_to_N(std::size_t chi) const {
  const RationalVector& z = characters_.at(chi);
  GroupElement psi;
  for (std::size_t i = 0; i < N_.rank(); ++i) {
    Rational v = z[i] * as_rational(N_.factors()[i]);
    if (!is_integer(v)) throw ConsistencyError("character does not restrict to N");
    psi.push_back(to_int64(v.get_num()));
  }
  return N_.normalize(psi);
}

InflatedSystem::InflatedSystem(const GradedSystem& base, ExtensionGroup ext) : base_(base), ext_(std::move(ext)) {
  if (!(ext_.N() == base_.group())) throw DimensionMismatch("extension kernel must be the base group");
}

InflatedElement InflatedSystem::zero() const {
  return InflatedElement{std::vector<GradedElement>(ext_.H().elements().size())};
}

InflatedElement InflatedSystem::twisted_constant(std::size_t chi, const GradedElement& x) const {
  InflatedElement f = zero();
  const auto& hs = ext_.H().elements();
  for (std::size_t h = 0; h < hs.size(); ++h)
    f.values[h] = x.scaled(phase_scalar(ext_.character(chi, {ext_.N().zero(), hs[h]})));
  return f;
}

InflatedElement InflatedSystem::delta(std::size_t h, const GradedElement& x) const {
  InflatedElement f = zero();
  f.values.at(h) = x;
  return f;
}

InflatedElement InflatedSystem::act(const std::pair<GroupElement, GroupElement>& g, const InflatedElement& f) const {
  const auto& H = ext_.H();
  const auto& hs = H.elements();
  std::size_t hg = H.index_of(g.second);
  InflatedElement out = zero();
  for (std::size_t h = 0; h < hs.size(); ++h) {
    GroupElement n = ext_.N().add(g.first, ext_.omega(h, hg));
    out.values[h] = base_.act(n, f.values[H.index_of(H.add(hs[h], g.second))]);
  }
  return out;
}

InflatedElement InflatedSystem::project(std::size_t chi, const InflatedElement& f) const {
  InflatedElement out = zero();
  Rational w = 1 / Rational(static_cast<long>(ext_.order()));
  for (const auto& g : ext_.elements()) {
    InflatedElement a = act(g, f);
    Scalar c = Scalar::phase(PhaseExponent(-ext_.character(chi, g)), w);
    for (std::size_t h = 0; h < out.values.size(); ++h) out.values[h] += a.values[h].scaled(c);
  }
  return out;
}

InflatedElement InflatedSystem::multiply(const InflatedElement& f, const InflatedElement& g) const {
  InflatedElement out = zero();
  for (std::size_t h = 0; h < out.values.size(); ++h) out.values[h] = base_.multiply(f.values[h], g.values[h]);
  return out;
}

InflatedElement InflatedSystem::adjoint(const InflatedElement& f) const {
  InflatedElement out = zero();
  for (std::size_t h = 0; h < out.values.size(); ++h) out.values[h] = base_.adjoint(f.values[h]);
  return out;
}

InflationReport InflatedSystem::verify() const {
  InflationReport r;
  r.omega_valid = true;  // enforced by ExtensionGroup
  r.invariant_factors = ext_.invariant_factors();
  const auto& H = ext_.H();
  const auto& N = ext_.N();
  std::size_t nh = H.elements().size();
  if (H.rank() > 0) r.lifted_order = ext_.element_order({N.zero(), H.generator(0)});
  const ThetaPtr& th = base_.theta();
  TorusElement u = TorusElement::generator(th, 0);
  TorusElement v = TorusElement::generator(th, 1);
  auto fail = [&r](const std::string& m) {
    if (r.failures.size() < 16) r.failures.push_back(m);
  };

  std::vector<InflatedElement> samples;
  for (std::size_t h = 0; h < nh; ++h)
    for (std::size_t psi = 0; psi < base_.size(); ++psi) samples.push_back(delta(h, base_.embed(u, psi)));

  r.action_homomorphism = true;
  for (const auto& g1 : ext_.elements())
    for (const auto& g2 : ext_.elements())
      for (const auto& f : samples)
        if (act(g1, act(g2, f)) != act(ext_.add(g1, g2), f)) {
          r.action_homomorphism = false;
          fail("action is not a homomorphism");
        }

  r.isotypic_identity = true;
  r.fixed_algebra = true;
  Scalar inv_h(1 / Rational(static_cast<long>(nh)));
  std::size_t h0 = H.index_of(H.zero());
  for (std::size_t chi = 0; chi < ext_.character_count(); ++chi) {
    std::size_t chi_n = N.index_of(ext_.restrict_to_N(chi));
    bool trivial = true;
    for (const auto& g : ext_.elements())
      if (ext_.character(chi, g) != 0) trivial = false;
    for (std::size_t psi = 0; psi < base_.size(); ++psi)
      for (const TorusElement& a : {TorusElement::scalar(th, Scalar::one()), u}) {
        GradedElement x = base_.embed(a, psi);
        InflatedElement got = project(chi, delta(h0, x));
        InflatedElement want = zero();
        if (psi == chi_n) {
          want = twisted_constant(chi, x);
          for (auto& val : want.values) val = val.scaled(inv_h);
        }
        if (got != want) {
          r.isotypic_identity = false;
          if (trivial) r.fixed_algebra = false;
          fail("isotypic projection mismatch for character " + std::to_string(chi));
        }
        if (psi != chi_n) continue;
        InflatedElement eig = twisted_constant(chi, x);
        for (const auto& g : ext_.elements()) {
          InflatedElement scaled = eig;
          for (auto& val : scaled.values) val = val.scaled(phase_scalar(ext_.character(chi, g)));
          if (act(g, eig) != scaled) {
            r.isotypic_identity = false;
            if (trivial) r.fixed_algebra = false;
            fail("twisted constant is not an eigenvector for character " + std::to_string(chi));
          }
        }
      }
  }

  r.complete = true;
  for (const auto& f : samples) {
    InflatedElement sum = zero();
    for (std::size_t chi = 0; chi < ext_.character_count(); ++chi) {
      InflatedElement p = project(chi, f);
      for (std::size_t h = 0; h < nh; ++h) sum.values[h] += p.values[h];
    }
    if (sum != f) {
      r.complete = false;
      fail("isotypic projections do not sum to the identity");
    }
  }

  r.picard = true;
  for (std::size_t chi = 0; chi < ext_.character_count(); ++chi) {
    std::size_t chi_n = N.index_of(ext_.restrict_to_N(chi));
    InflatedElement W = twisted_constant(chi, base_.unit(chi_n));
    InflatedElement Ws = adjoint(W);
    InflatedElement one = zero();
    for (std::size_t h = 0; h < nh; ++h) one.values[h] = base_.unit(0);
    if (multiply(W, Ws) != one || multiply(Ws, W) != one) {
      r.picard = false;
      fail("twisted unit is not unitary for character " + std::to_string(chi));
      continue;
    }
    std::array<TorusElement, 2> images;
    bool ok = true;
    for (std::size_t k = 0; k < 2; ++k) {
      InflatedElement c = zero();
      for (std::size_t h = 0; h < nh; ++h) c.values[h] = base_.embed(k == 0 ? u : v);
      InflatedElement y = multiply(multiply(W, c), Ws);
      for (std::size_t h = 0; h < nh; ++h)
        if (y.values[h] != y.values[0]) ok = false;
      const auto& comps = y.values[0].components;
      if (comps.size() != 1 || comps.begin()->first != 0)
        ok = false;
      else
        images[k] = comps.begin()->second;
    }
    if (!ok || out_class_of_images(th, images[0], images[1]) != base_.phi()[chi_n]) {
      r.picard = false;
      fail("Picard class of character " + std::to_string(chi) + " is not phi(chi_N)");
    }
  }
  return r;
}

InflatedSystem inflate_by_extension(const GradedSystem& base, const FiniteAbelianGroup& H,
                                    const ExtensionGroup::Omega& omega) {
  return InflatedSystem(base, ExtensionGroup(base.group(), H, omega));
}

}  // namespace qtc
