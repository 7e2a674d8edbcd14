#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qtc/finite_abelian.hpp"
#include "qtc/lattice.hpp"
#include "qtc/torus.hpp"

namespace qtc {

/// The class of a + b*theta in R / (Z + theta Z), with a, b in [0, 1).
struct TorusPoint {
  Rational a;
  Rational b;

  TorusPoint() = default;
  TorusPoint(const Rational& a_, const Rational& b_);

  /// Writes p = a + b*theta12 exactly (no reduction). Throws InvalidArgument
  /// if p is not in Q + Q*theta12.
  static std::pair<Rational, Rational> decompose(const RationalPoly& p, const RationalPoly& theta12);
  static TorusPoint from_poly(const RationalPoly& p, const RationalPoly& theta12);
  RationalPoly to_poly(const RationalPoly& theta12) const;

  bool is_zero() const { return a == 0 && b == 0; }
  friend TorusPoint operator+(const TorusPoint& x, const TorusPoint& y) { return {x.a + y.a, x.b + y.b}; }
  TorusPoint operator-() const { return {-a, -b}; }
  TorusPoint times(const Integer& k) const { return {a * Rational(k), b * Rational(k)}; }
  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;

  /// "a + b*theta" style text, e.g. "1/2", "theta/2", "1/3 + 2*theta/5".
  std::string to_string() const;
};

using TorusPair = std::array<TorusPoint, 2>;

/// Derived action of SL2(Z) on gauge parameters: rho(M) s = M^{-1} s.
GaugeParameter rho_action(const IntMatrix& M, const GaugeParameter& s);
TorusPair rho_action(const IntMatrix& M, const TorusPair& w);

/// Element (w, M) of (T / <e(theta)>)^2 x| SL2(Z). The automorphism it names
/// is gauge(w) o lattice(M).
struct OutSmoothElement {
  TorusPair w;
  IntMatrix M = IntMatrix::identity(2);

  OutSmoothElement() = default;
  OutSmoothElement(TorusPair w_, IntMatrix M_);

  static OutSmoothElement identity() { return {}; }
  bool is_identity() const;
  friend bool operator==(const OutSmoothElement&, const OutSmoothElement&) = default;
  std::string to_string() const;
};

/// (w1, M1)(w2, M2) = (w1 + rho(M1) w2, M2 M1).
OutSmoothElement out_mul(const OutSmoothElement& x, const OutSmoothElement& y);
OutSmoothElement out_inv(const OutSmoothElement& x);
inline bool out_eq(const OutSmoothElement& x, const OutSmoothElement& y) { return x == y; }
OutSmoothElement out_pow(const OutSmoothElement& x, std::int64_t k);

/// The automorphism gauge(lift) o lattice(M) of the quantum 2-torus.
TorusAutomorphism realize(const ThetaPtr& theta, const TorusPair& lift, const IntMatrix& M);

/// Reads the Out class of an automorphism from the images of u and v, which
/// must be unitary monomials. Throws ConsistencyError otherwise.
OutSmoothElement out_class_of_images(const ThetaPtr& theta, const TorusElement& image_u, const TorusElement& image_v);

struct HomomorphismReport {
  bool commute = false;
  bool orders = false;
  bool injective = false;
  /// phi on every character, indexed like G.elements(); filled when valid.
  std::vector<OutSmoothElement> table;

  bool valid() const { return commute && orders; }
};

/// `images` holds one element per generator of the character group.
HomomorphismReport check_homomorphism(const FiniteAbelianGroup& G, const std::vector<OutSmoothElement>& images);

/// Structure constant sigma(chi1, chi2) = e(phase) U(mu).
struct SigmaEntry {
  Exponent mu{0, 0};
  PhaseExponent phase;

  TorusElement element(const ThetaPtr& theta) const;
  friend bool operator==(const SigmaEntry&, const SigmaEntry&) = default;
};

using SigmaTable = std::vector<std::vector<SigmaEntry>>;

/// Monomial cocycle for the lifts: alpha_1 alpha_2 = Ad[sigma(1,2)] alpha_12,
/// with sigma normalized to phase 1. `lifts` and `table` are indexed like
/// G.elements(). Throws ConsistencyError if the defect is not in Z^2 + theta Z^2.
SigmaTable compute_cocycle(const ThetaPtr& theta, const FiniteAbelianGroup& G,
                           const std::vector<OutSmoothElement>& table, const std::vector<TorusPair>& lifts);

struct AssociativityReport {
  bool already_associative = false;
  std::size_t equations = 0;
  std::size_t unknowns = 0;
  /// beta(chi1, chi2) exponents applied to sigma.
  std::vector<std::vector<PhaseExponent>> correction;
};

/// Scalar associator A(1,2,3) with (e1 e2) e3 = e(A) e1 (e2 e3).
PhaseExponent associator(const ThetaPtr& theta, const FiniteAbelianGroup& G,
                         const std::vector<TorusAutomorphism>& alpha, const SigmaTable& sigma, std::size_t i,
                         std::size_t j, std::size_t k);

/// Finds a normalized scalar 2-cochain beta with beta*sigma associative.
/// Throws ObstructionError if none exists.
SigmaTable solve_associativity(const ThetaPtr& theta, const FiniteAbelianGroup& G,
                               const std::vector<TorusAutomorphism>& alpha, const SigmaTable& sigma,
                               AssociativityReport* report = nullptr);

/// Element sum_chi a_chi e_chi of the graded algebra, keyed by the index of
/// chi in G.elements().
struct GradedElement {
  std::map<std::size_t, TorusElement> components;

  bool is_zero() const { return components.empty(); }
  void add(std::size_t chi, const TorusElement& a);
  friend bool operator==(const GradedElement& x, const GradedElement& y);
  GradedElement& operator+=(const GradedElement& other);
  GradedElement scaled(const Scalar& c) const;
};

/// The algebra sum_chi A_theta e_chi with
/// (a e_1)(b e_2) = a alpha_1(b) sigma(1,2) e_12, an action of G by
/// alpha_g(a e_chi) = chi(g) a e_chi, and (a e_chi)^* =
/// sigma(chi^{-1}, chi)^* alpha_{chi^{-1}}(a^*) e_{chi^{-1}}.
class GradedSystem {
 public:
  GradedSystem() = default;
  GradedSystem(ThetaPtr theta, FiniteAbelianGroup G, std::vector<OutSmoothElement> phi, std::vector<TorusPair> lifts,
               SigmaTable sigma);

  const ThetaPtr& theta() const { return theta_; }
  const RationalPoly& theta12() const { return (*theta_)(0, 1); }
  const FiniteAbelianGroup& group() const { return G_; }
  const std::vector<OutSmoothElement>& phi() const { return phi_; }
  const std::vector<TorusPair>& lifts() const { return lifts_; }
  const std::vector<TorusAutomorphism>& alpha() const { return alpha_; }
  const SigmaTable& sigma() const { return sigma_; }
  std::size_t size() const { return G_.elements().size(); }

  GradedElement unit(std::size_t chi) const;
  GradedElement embed(const TorusElement& a, std::size_t chi = 0) const;
  GradedElement multiply(const GradedElement& x, const GradedElement& y) const;
  GradedElement adjoint(const GradedElement& x) const;
  GradedElement act(const GroupElement& g, const GradedElement& x) const;

 private:
  ThetaPtr theta_;
  FiniteAbelianGroup G_;
  std::vector<OutSmoothElement> phi_;
  std::vector<TorusPair> lifts_;
  std::vector<TorusAutomorphism> alpha_;
  SigmaTable sigma_;
};

/// Ad[e_chi] on u and v through the graded product, read back as an Out class.
OutSmoothElement picard_of(const GradedSystem& sys, std::size_t chi);

struct GradedReport {
  bool graded = false;
  bool associative = false;
  bool involution = false;
  bool unitary = false;
  bool fixed_algebra = false;
  bool picard = false;
  bool non_inner = false;
  std::vector<std::string> failures;

  bool ok() const { return graded && associative && involution && unitary && fixed_algebra && picard && non_inner; }
};

/// `kernel` lists the characters whose Picard class is expected to be trivial
/// ({0} when phi is injective).
GradedReport verify_graded_system(const GradedSystem& sys, const std::vector<GroupElement>& kernel);

struct SmoothBuild {
  GradedSystem system;
  HomomorphismReport homomorphism;
  AssociativityReport associativity;
  /// Set when phi was not injective and the system was pulled back from the
  /// injective quotient.
  bool reduced = false;
  std::vector<GroupElement> kernel;
  GradedReport report;
};

/// Throws InvalidArgument when the images do not define a homomorphism and
/// ObstructionError when no associative correction exists.
SmoothBuild build_smooth_covering(const ThetaPtr& theta, const FiniteAbelianGroup& G,
                                  const std::vector<OutSmoothElement>& images);

/// Central extension G = N x_omega H with (n,h) + (n',h') = (n + n' + omega(h,h'), h + h').
class ExtensionGroup {
 public:
  using Omega = std::function<GroupElement(const GroupElement&, const GroupElement&)>;

  ExtensionGroup(FiniteAbelianGroup N, FiniteAbelianGroup H, Omega omega);

  const FiniteAbelianGroup& N() const { return N_; }
  const FiniteAbelianGroup& H() const { return H_; }
  const GroupElement& omega(std::size_t h1, std::size_t h2) const { return omega_.at(h1).at(h2); }
  std::size_t order() const { return elements_.size(); }
  const std::vector<std::pair<GroupElement, GroupElement>>& elements() const { return elements_; }
  std::pair<GroupElement, GroupElement> add(const std::pair<GroupElement, GroupElement>& x,
                                            const std::pair<GroupElement, GroupElement>& y) const;
  std::int64_t element_order(const std::pair<GroupElement, GroupElement>& x) const;
  /// Invariant factors of G.
  const std::vector<std::int64_t>& invariant_factors() const { return factors_; }

  /// Characters as exponent functions, chi(n, h) in [0,1).
  std::size_t character_count() const { return characters_.size(); }
  Rational character(std::size_t chi, const std::pair<GroupElement, GroupElement>& x) const;
  /// chi_N in the coordinates of N's characters.
  GroupElement restrict_to_N(std::size_t chi) const;

 private:
  FiniteAbelianGroup N_;
  FiniteAbelianGroup H_;
  std::vector<std::vector<GroupElement>> omega_;
  std::vector<std::pair<GroupElement, GroupElement>> elements_;
  std::vector<std::int64_t> factors_;
  std::vector<RationalVector> characters_;
  std::vector<GroupElement> c_of_h_;  // N-part of sum_j y_j (0, f_j)
};

/// Functions H -> base algebra.
struct InflatedElement {
  std::vector<GradedElement> values;  // indexed by H.index_of
  friend bool operator==(const InflatedElement&, const InflatedElement&) = default;
};

struct InflationReport {
  bool omega_valid = false;
  bool action_homomorphism = false;
  bool isotypic_identity = false;
  bool complete = false;
  bool fixed_algebra = false;
  bool picard = false;
  std::vector<std::int64_t> invariant_factors;
  std::int64_t lifted_order = 0;  // order of (0, first generator of H)
  std::vector<std::string> failures;

  bool ok() const {
    return omega_valid && action_homomorphism && isotypic_identity && complete && fixed_algebra && picard;
  }
};

/// The action (alpha'_{(n,h)} f)(h') = alpha_{n + omega(h',h)}(f(h' + h)) on
/// functions H -> base, together with the verification of its isotypic
/// components and Picard classes against the base system.
class InflatedSystem {
 public:
  InflatedSystem(const GradedSystem& base, ExtensionGroup ext);

  const ExtensionGroup& extension() const { return ext_; }
  const GradedSystem& base() const { return base_; }

  InflatedElement zero() const;
  /// h -> e(chi_H(h)) x.
  InflatedElement twisted_constant(std::size_t chi, const GradedElement& x) const;
  InflatedElement delta(std::size_t h, const GradedElement& x) const;
  InflatedElement act(const std::pair<GroupElement, GroupElement>& g, const InflatedElement& f) const;
  /// Averaging projection onto the isotypic component of chi.
  InflatedElement project(std::size_t chi, const InflatedElement& f) const;
  InflatedElement multiply(const InflatedElement& f, const InflatedElement& g) const;
  InflatedElement adjoint(const InflatedElement& f) const;

  InflationReport verify() const;

 private:
  GradedSystem base_;
  ExtensionGroup ext_;
};

InflatedSystem inflate_by_extension(const GradedSystem& base, const FiniteAbelianGroup& H,
                                    const ExtensionGroup::Omega& omega);

}  // namespace qtc
