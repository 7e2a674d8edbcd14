#include "qtc/covering.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <set>
#include <thread>

#include "qtc/errors.hpp"

namespace qtc {

namespace {

void require_square(const IntMatrix& M, std::size_t n, const char* what) {
  if (M.rows() != n || M.cols() != n) throw DimensionMismatch(std::string(what) + " has the wrong shape");
}

IntVector to_int_vector(const Exponent& e) {
  IntVector v;
  for (auto x : e) v.emplace_back(static_cast<long>(x));
  return v;
}

Exponent to_exponent(const IntVector& v) {
  Exponent e;
  for (const auto& x : v) e.push_back(to_int64(x));
  return e;
}

GaugeParameter to_gauge(const RationalVector& v) {
  GaugeParameter s;
  for (const auto& x : v) s.emplace_back(x);
  return s;
}

bool is_trivial_phase_coefficient(const TorusElement& x, const Exponent& lambda) {
  return x.terms().size() == 1 && x.terms().begin()->first == lambda && x.terms().begin()->second.is_one();
}

}  // namespace

ThetaMatrix solve_theta_prime(const ThetaMatrix& theta, const IntMatrix& M, const IntMatrix& K) {
  std::size_t n = theta.dimension();
  require_square(M, n, "M");
  require_square(K, n, "K");
  if (!K.is_skew()) throw InvalidArgument("correction K must be skew-symmetric");
  RationalMatrix inv = rational_inverse(M);
  std::vector<std::vector<RationalPoly>> out(n, std::vector<RationalPoly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t a = 0; a < n; ++a) {
        if (inv[i][a] == 0) continue;
        for (std::size_t b = 0; b < n; ++b) {
          if (inv[j][b] == 0) continue;
          RationalPoly entry = theta(a, b) + RationalPoly(Rational(K(a, b)));
          out[i][j] += entry * (inv[i][a] * inv[j][b]);
        }
      }
  ThetaMatrix tp(out);
  auto defect = theta_relation_defect(theta, M, tp);
  if (!defect || *defect != K) throw ConsistencyError("theta' does not reproduce theta + K");
  return tp;
}

std::optional<IntMatrix> theta_relation_defect(const ThetaMatrix& theta, const IntMatrix& M,
                                               const ThetaMatrix& theta_prime) {
  std::size_t n = theta.dimension();
  require_square(M, n, "M");
  if (theta_prime.dimension() != n) throw DimensionMismatch("theta and theta' dimensions differ");
  IntMatrix K(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      RationalPoly p;
      for (std::size_t a = 0; a < n; ++a) {
        if (M(k, a) == 0) continue;
        for (std::size_t b = 0; b < n; ++b) {
          if (M(l, b) == 0) continue;
          p += theta_prime(a, b) * Rational(M(k, a) * M(l, b));
        }
      }
      p -= theta(k, l);
      if (!p.is_integer_constant()) return std::nullopt;
      K(k, l) = p.constant().get_num();
    }
  return K;
}

std::vector<ThetaCorrection> enumerate_theta_corrections(const ThetaMatrix& theta, const IntMatrix& M,
                                                         std::int64_t bound) {
  std::size_t n = theta.dimension();
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l) slots.emplace_back(k, l);
  std::vector<ThetaCorrection> out;
  std::vector<std::int64_t> vals(slots.size(), -bound);
  while (true) {
    IntMatrix K(n, n);
    for (std::size_t s = 0; s < slots.size(); ++s) {
      K(slots[s].first, slots[s].second) = static_cast<long>(vals[s]);
      K(slots[s].second, slots[s].first) = static_cast<long>(-vals[s]);
    }
    ThetaMatrix tp = solve_theta_prime(theta, M, K);
    bool dup = std::any_of(out.begin(), out.end(), [&](const ThetaCorrection& c) { return c.theta_prime == tp; });
    if (!dup) out.push_back({K, tp});
    std::size_t i = slots.size();
    while (i > 0 && vals[i - 1] == bound) {
      vals[i - 1] = -bound;
      --i;
    }
    if (i == 0) break;
    ++vals[i - 1];
  }
  return out;
}

CoveringSystem::CoveringSystem(CoveringSpec spec, bool verify_relation) : spec_(std::move(spec)) {
  std::size_t n = spec_.theta.dimension();
  require_square(spec_.M, n, "M");
  if (spec_.theta_prime.dimension() != n) throw DimensionMismatch("theta and theta' dimensions differ");
  if (spec_.M.determinant() == 0) throw SingularMatrix("covering matrix M is singular");
  auto defect = theta_relation_defect(spec_.theta, spec_.M, spec_.theta_prime);
  if (defect) {
    spec_.K = *defect;
  } else {
    if (verify_relation)
      throw ConsistencyError("M theta' M^T - theta is not an integer matrix for M = " + spec_.M.to_string());
    spec_.K = IntMatrix(n, n);
  }
  base_ = make_theta(spec_.theta);
  cover_ = make_theta(spec_.theta_prime);
  group_ = QuotientGroup(spec_.M);
  std::vector<std::int64_t> f;
  for (const auto& d : group_.invariant_factors()) f.push_back(to_int64(d));
  abstract_ = FiniteAbelianGroup(f);
  m_inverse_ = rational_inverse(spec_.M);
  for (std::size_t k = 0; k < n; ++k) embedding_.push_back(TorusElement::monomial(cover_, to_exponent(spec_.M.row(k))));
  if (verify_relation) {
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = k + 1; l < n; ++l) {
        TorusElement lhs = embedding_[k] * embedding_[l];
        TorusElement rhs = (embedding_[l] * embedding_[k]).scaled(Scalar::phase(PhaseExponent(spec_.theta(k, l))));
        if (!(lhs == rhs)) throw ConsistencyError("embedded generators violate the base commutation relation");
      }
  }
}

RationalVector CoveringSystem::action_parameter(const IntVector& m) const {
  std::size_t n = m.size();
  RationalVector s(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s[i] += m_inverse_[i][j] * Rational(m[j]);
  return s;
}

TorusElement CoveringSystem::act(const IntVector& m, const TorusElement& a) const {
  return gauge(a, to_gauge(action_parameter(m)));
}

TorusElement CoveringSystem::embed(const TorusElement& base_element) const {
  TorusElement out(cover_);
  for (const auto& [l, c] : base_element.terms()) {
    TorusElement x = TorusElement::scalar(cover_, c);
    for (std::size_t k = 0; k < l.size(); ++k) x = x * embedding_[k].power(l[k]);
    out += x;
  }
  return out;
}

GaugeParameter CoveringSystem::lift_parameter(const GaugeParameter& s) const {
  std::size_t n = s.size();
  GaugeParameter out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m_inverse_[i][j] != 0) out[i] += s[j] * m_inverse_[i][j];
  return out;
}

CoveringSystem build_connected_covering(const ThetaMatrix& theta, const IntMatrix& M, const ThetaMatrix& theta_prime) {
  return CoveringSystem(CoveringSpec{theta, M, IntMatrix(), theta_prime}, true);
}

CoveringSystem build_covering_unchecked(const ThetaMatrix& theta, const IntMatrix& M, const ThetaMatrix& theta_prime) {
  return CoveringSystem(CoveringSpec{theta, M, IntMatrix(), theta_prime}, false);
}

CoveringReport check_connected_covering(const CoveringSystem& sys, std::int64_t support_bound) {
  CoveringReport rep;
  const auto& cover = sys.cover_theta();
  const auto& M = sys.spec().M;
  std::size_t n = M.rows();
  const QuotientGroup& G = sys.group();
  std::vector<Exponent> box = exponent_box(n, support_bound);
  std::vector<TorusElement> box_monomials;
  for (const auto& l : box) box_monomials.push_back(TorusElement::monomial(cover, l));

  // (a) the gauge parameters depend on cosets only and compose like the group.
  rep.action_well_defined = true;
  for (const auto& m : G.coset_reps()) {
    for (std::size_t j = 0; j < n && rep.action_well_defined; ++j) {
      IntVector shifted = m;
      for (std::size_t i = 0; i < n; ++i) shifted[i] += M(i, j);
      for (const auto& x : box_monomials)
        if (!(sys.act(m, x) == sys.act(shifted, x))) {
          rep.action_well_defined = false;
          rep.failures.push_back("action depends on the coset representative");
          break;
        }
    }
    for (const auto& m2 : G.coset_reps()) {
      if (!rep.action_well_defined) break;
      IntVector sum(n);
      for (std::size_t i = 0; i < n; ++i) sum[i] = m[i] + m2[i];
      IntVector r = G.reduce(sum);
      for (const auto& x : box_monomials)
        if (!(sys.act(m, sys.act(m2, x)) == sys.act(r, x))) {
          rep.action_well_defined = false;
          rep.failures.push_back("action is not a group homomorphism");
          break;
        }
    }
  }

  // (b) fixed support equals M^T Z^n, the fixed monomials are products of
  // embedded generators, and those satisfy the base relations.
  rep.fixed_algebra = true;
  QuotientGroup support_lattice(M.transpose());
  RationalMatrix mt_inv = rational_inverse(M.transpose());
  for (std::size_t i = 0; i < box.size(); ++i) {
    const auto& l = box[i];
    bool fixed = std::all_of(G.coset_reps().begin(), G.coset_reps().end(),
                             [&](const IntVector& m) { return sys.act(m, box_monomials[i]) == box_monomials[i]; });
    bool in_lattice = support_lattice.contains(to_int_vector(l));
    if (fixed != in_lattice) {
      rep.fixed_algebra = false;
      rep.failures.push_back("fixed support differs from M^T Z^n at " + TorusElement::monomial(cover, l).to_string());
      break;
    }
    if (!fixed) continue;
    Exponent z(n);
    for (std::size_t a = 0; a < n; ++a) {
      Rational s = 0;
      for (std::size_t b = 0; b < n; ++b) s += mt_inv[a][b] * Rational(static_cast<long>(l[b]));
      z[a] = to_int64(s.get_num());
    }
    TorusElement prod = TorusElement::scalar(cover, Scalar::one());
    for (std::size_t k = 0; k < n; ++k) prod = prod * sys.embedding()[k].power(z[k]);
    if (prod.terms().size() != 1 || prod.terms().begin()->first != l || !prod.is_unitary_monomial()) {
      rep.fixed_algebra = false;
      rep.failures.push_back("fixed monomial is not generated by the embedded generators");
      break;
    }
  }
  for (std::size_t k = 0; k < n && rep.fixed_algebra; ++k)
    for (std::size_t l = k + 1; l < n; ++l) {
      PhaseExponent chain(cover->pairing(to_exponent(M.row(k)), to_exponent(M.row(l))));
      PhaseExponent base(sys.spec().theta(k, l));
      TorusElement lhs = sys.embedding()[k] * sys.embedding()[l];
      TorusElement rhs = (sys.embedding()[l] * sys.embedding()[k]).scaled(Scalar::phase(base));
      if (chain != base || !(lhs == rhs)) {
        rep.fixed_algebra = false;
        rep.failures.push_back("embedded generators violate the base relation");
        break;
      }
    }
  for (const auto& m : G.coset_reps())
    for (const auto& e : sys.embedding())
      if (rep.fixed_algebra && !(sys.act(m, e) == e)) {
        rep.fixed_algebra = false;
        rep.failures.push_back("embedded generator is moved by the group action");
      }

  // (c) every character of G has a unitary monomial in its isotypic component.
  const FiniteAbelianGroup& abs = sys.abstract_group();
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < abs.rank(); ++i) {
    IntVector c(abs.rank(), 0);
    c[i] = 1;
    gens.push_back(G.from_coordinates(c));
  }
  std::set<GroupElement> hit;
  for (std::size_t i = 0; i < box.size(); ++i) {
    GroupElement chi;
    bool ok = true;
    for (std::size_t g = 0; g < gens.size() && ok; ++g) {
      TorusElement y = sys.act(gens[g], box_monomials[i]);
      auto ph = y.terms().begin()->second.as_phase();
      if (!ph || !ph->transcendental_part().is_zero()) {
        ok = false;
        break;
      }
      Rational c = ph->root_of_unity_part() * Rational(static_cast<long>(abs.factors()[g]));
      if (!is_integer(c)) ok = false;
      else chi.push_back(to_int64(c.get_num()));
    }
    if (!ok) continue;
    if (!(box_monomials[i].adjoint() * box_monomials[i] == TorusElement::scalar(cover, Scalar::one()))) continue;
    hit.insert(abs.normalize(chi));
  }
  rep.free = static_cast<std::int64_t>(hit.size()) == abs.order();
  if (!rep.free) rep.failures.push_back("some isotypic component has no unitary monomial within the bound");

  // (d) lifted gauge action with a generic parameter.
  rep.ergodic_lift = true;
  GaugeParameter generic(n);
  for (std::size_t k = 0; k < n; ++k) generic[k] = RationalPoly::monomial(static_cast<unsigned>(k + 2), 1);
  GaugeParameter lifted = sys.lift_parameter(generic);
  for (std::size_t k = 0; k < n; ++k) {
    TorusElement expect = sys.embedding()[k].scaled(Scalar::phase(PhaseExponent(generic[k])));
    if (!(gauge(sys.embedding()[k], lifted) == expect)) {
      rep.ergodic_lift = false;
      rep.failures.push_back("lift does not restrict to the base gauge action");
    }
  }
  for (std::size_t i = 0; i < box.size() && rep.ergodic_lift; ++i) {
    const auto& x = box_monomials[i];
    bool zero = std::all_of(box[i].begin(), box[i].end(), [](std::int64_t v) { return v == 0; });
    if ((gauge(x, lifted) == x) != zero) {
      rep.ergodic_lift = false;
      rep.failures.push_back("lift is not ergodic");
    }
    for (const auto& m : G.coset_reps())
      if (!(gauge(sys.act(m, x), lifted) == sys.act(m, gauge(x, lifted)))) {
        rep.ergodic_lift = false;
        rep.failures.push_back("lift does not commute with the group action");
        break;
      }
    for (std::size_t j = 0; j < n && rep.ergodic_lift; ++j) {
      GaugeParameter col(n);
      for (std::size_t i2 = 0; i2 < n; ++i2) col[i2] = RationalPoly(Rational(M(i2, j)));
      if (!is_trivial_phase_coefficient(gauge(x, sys.lift_parameter(col)), box[i]) && !x.is_zero()) {
        rep.ergodic_lift = false;
        rep.failures.push_back("lattice M Z^n is not in the kernel of the lift");
      }
    }
  }
  return rep;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("QTC_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

std::vector<ClassificationRow> classify_coverings(const ThetaMatrix& theta, std::int64_t max_index,
                                                  std::int64_t correction_bound, std::int64_t support_bound,
                                                  unsigned threads) {
  std::vector<IntMatrix> lattices = enumerate_sublattices(theta.dimension(), max_index);
  std::vector<std::vector<ClassificationRow>> per_lattice(lattices.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= lattices.size()) return;
      const IntMatrix& H = lattices[i];
      QuotientGroup q(H);
      for (const auto& corr : enumerate_theta_corrections(theta, H, correction_bound)) {
        CoveringSystem sys = build_connected_covering(theta, H, corr.theta_prime);
        per_lattice[i].push_back(ClassificationRow{H, q.invariant_factors(), q.coset_reps(), corr.K, corr.theta_prime,
                                                   check_connected_covering(sys, support_bound)});
      }
    }
  };
  if (threads == 0) threads = default_thread_count();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(lattices.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::vector<ClassificationRow> rows;
  for (auto& v : per_lattice)
    for (auto& r : v) rows.push_back(std::move(r));
  return rows;
}

ProfinitePoset profinite_tower(std::size_t n, std::int64_t max_index) {
  ProfinitePoset poset;
  std::vector<IntMatrix> lattices = enumerate_sublattices(n, max_index);
  std::vector<QuotientGroup> groups;
  for (const auto& H : lattices) {
    groups.emplace_back(H);
    poset.nodes.push_back({H, groups.back().invariant_factors()});
  }
  std::size_t N = lattices.size();
  std::vector<std::vector<bool>> inside(N, std::vector<bool>(N, false));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (i != j) inside[i][j] = is_sublattice(lattices[i], lattices[j]);

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_at;
  poset.maps_well_defined = true;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      if (!inside[i][j]) continue;
      bool cover = true;
      for (std::size_t k = 0; k < N && cover; ++k)
        if (inside[i][k] && inside[k][j]) cover = false;
      const auto& src = groups[i];
      const auto& dst = groups[j];
      std::size_t r_src = src.invariant_factors().size(), r_dst = dst.invariant_factors().size();
      IntMatrix A(r_dst, r_src);
      for (std::size_t c = 0; c < r_src; ++c) {
        IntVector e(r_src, 0);
        e[c] = 1;
        IntVector image = dst.coordinates(src.from_coordinates(e));
        for (std::size_t r = 0; r < r_dst; ++r) A(r, c) = image[r];
        // d_c times the generator must map to zero.
        IntVector multiple = src.from_coordinates(e);
        for (auto& x : multiple) x *= src.invariant_factors()[c];
        if (!dst.contains(multiple)) poset.maps_well_defined = false;
      }
      edge_at[{i, j}] = poset.edges.size();
      poset.edges.push_back({i, j, cover, A});
    }

  poset.composition_consistent = true;
  for (const auto& [ij, e1] : edge_at)
    for (std::size_t k = 0; k < N; ++k) {
      auto jk = edge_at.find({ij.second, k});
      if (jk == edge_at.end()) continue;
      auto ik = edge_at.find({ij.first, k});
      if (ik == edge_at.end()) {
        poset.composition_consistent = false;
        continue;
      }
      IntMatrix composed = poset.edges[jk->second].map * poset.edges[e1].map;
      const IntMatrix& direct = poset.edges[ik->second].map;
      const IntVector& d = groups[k].invariant_factors();
      for (std::size_t r = 0; r < composed.rows(); ++r)
        for (std::size_t c = 0; c < composed.cols(); ++c) {
          Integer diff = composed(r, c) - direct(r, c);
          if (diff % d[r] != 0) poset.composition_consistent = false;
        }
    }
  return poset;
}

FreenessResult check_freeness_ergodic(const std::vector<GroupElement>& N, const FiniteAbelianGroup& G) {
  if (!G.is_subgroup(N)) throw InvalidArgument("character set is not a subgroup of the dual group");
  FreenessResult r;
  r.kernel = G.annihilator(N);
  std::set<GroupElement> distinct;
  for (const auto& x : N) distinct.insert(G.normalize(x));
  bool full = static_cast<std::int64_t>(distinct.size()) == G.order();
  r.free = r.kernel.size() == 1;
  if (full != r.free) throw ConsistencyError("annihilator duality failed");
  return r;
}

FreenessResult check_freeness_ergodic(const std::vector<GroupElement>& N, const QuotientGroup& G) {
  std::vector<std::int64_t> f;
  for (const auto& d : G.invariant_factors()) f.push_back(to_int64(d));
  return check_freeness_ergodic(N, FiniteAbelianGroup(f));
}

}  // namespace qtc
