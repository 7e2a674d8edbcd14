// Prints one PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "generators.hpp"
#include "oracles.hpp"
#include "samples.hpp"
#include "qtc/covering.hpp"
#include "qtc/errors.hpp"
#include "qtc/smooth.hpp"

using namespace qtc;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && pass) detail << what;
    pass = pass && cond;
  }
};

ThetaPtr theta_t() { return make_theta(ThetaMatrix::two(RationalPoly::t())); }

IntMatrix zero_k() { return IntMatrix(2, 2); }

void twisted_product_oracle(Outcome& o) {
  gen::Gen g(1001);
  for (int i = 0; i < 1000; ++i) {
    std::size_t n = i % 2 == 0 ? 2 : 3;
    auto th = make_theta(g.theta(n));
    Exponent l = g.exponent(n, 3), m = g.exponent(n, 3);
    auto [phase, sum] = oracle::swap_normal_order(*th, l, m);
    TorusElement expected = TorusElement::monomial(th, sum, Scalar::phase(PhaseExponent(phase)));
    o.require(monomial(th, l) * monomial(th, m) == expected, "product differs from the swap oracle");
  }
}

void constructive_coverings(Outcome& o) {
  ThetaMatrix theta = ThetaMatrix::two(RationalPoly::t());
  auto lattices = enumerate_sublattices(2, 6);
  o.require(lattices.size() == 33, "expected 33 sublattices");
  for (const auto& M : lattices) {
    CoveringSystem sys = build_connected_covering(theta, M, solve_theta_prime(theta, M, zero_k()));
    CoveringReport r = check_connected_covering(sys, 4);
    o.require(r.ok(), "covering check failed for " + M.to_string());
  }
  o.detail << lattices.size() << " sublattices";
}

void theta_relation_completeness(Outcome& o) {
  ThetaMatrix theta = ThetaMatrix::two(RationalPoly::t());
  IntMatrix M = IntMatrix::diagonal({2, 1});
  RationalPoly t = RationalPoly::t();
  Rational h = make_rational(1, 2);
  std::set<RationalPoly> expected{(t - 1) * h, t * h, (t + 1) * h};
  std::set<RationalPoly> got;
  for (const auto& c : enumerate_theta_corrections(theta, M, 1)) {
    got.insert(c.theta_prime(0, 1));
    o.require(theta_relation_defect(theta, M, c.theta_prime).has_value(), "relation defect not integral");
  }
  o.require(got == expected, "correction set differs");
}

void classification_count(Outcome& o) {
  auto rows = classify_coverings(ThetaMatrix::two(RationalPoly::t()), 4, 0, 4);
  std::int64_t expected = 0;
  for (std::int64_t m = 1; m <= 4; ++m) {
    expected += oracle::sigma1(m);
    std::size_t at_m = 0;
    for (const auto& r : rows)
      if (abs(r.M_hnf.determinant()) == m) ++at_m;
    o.require(at_m == oracle::count_index_m_sublattices_bruteforce(m), "per-index count differs from brute force");
  }
  o.require(rows.size() == static_cast<std::size_t>(expected), "row count differs");
  for (const auto& r : rows) o.require(r.checks.ok(), "row failed its checks");
  o.detail << rows.size() << " rows";
}

void smooth_round_trip(Outcome& o) {
  auto th = theta_t();
  std::map<std::vector<std::int64_t>, int> per_group;
  for (const auto& s : samples::smooth_samples()) {
    FiniteAbelianGroup G(s.factors);
    SmoothBuild b;
    try {
      b = build_smooth_covering(th, G, s.images);
    } catch (const Error& e) {
      o.require(false, s.label + ": " + e.what());
      continue;
    }
    o.require(b.report.ok(), s.label + ": verification failed");
    const GradedSystem& sys = b.system;
    std::size_t n = sys.size();
    auto A = oracle::associator_table(th, G, sys.alpha(), sys.sigma());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) o.require(A[i][j][k].is_trivial(), s.label + ": associator");
    for (std::size_t chi = 0; chi < n; ++chi) {
      o.require(picard_of(sys, chi) == b.homomorphism.table[chi], s.label + ": Picard class");
      GradedElement e = sys.unit(chi);
      o.require(sys.multiply(sys.adjoint(e), e) == sys.unit(0), s.label + ": unitarity");
      o.require(sys.multiply(e, sys.adjoint(e)) == sys.unit(0), s.label + ": unitarity");
    }
    ++per_group[s.factors];
  }
  for (auto f : {std::vector<std::int64_t>{2}, {3}, {2, 2}})
    o.require(per_group[f] >= 5, "fewer than five samples for a group");
  o.detail << per_group[{2}] << "+" << per_group[{3}] << "+" << per_group[{2, 2}] << " samples";
}

void freeness_lemma(Outcome& o) {
  FiniteAbelianGroup G({2, 2});
  auto subgroups = oracle::subgroups_bruteforce(G);
  o.require(subgroups.size() == 5, "expected 5 subgroups");
  for (const auto& N : subgroups) {
    FreenessResult r = check_freeness_ergodic({N.begin(), N.end()}, G);
    o.require(std::set<GroupElement>(r.kernel.begin(), r.kernel.end()) == oracle::annihilator_bruteforce(G, N),
              "kernel differs from annihilator");
    o.require(r.free == (N.size() == 4), "freeness differs from N = dual group");
  }
}

void inflation_lemma(Outcome& o) {
  auto th = theta_t();
  FiniteAbelianGroup C2({2});
  SmoothBuild base = build_smooth_covering(th, C2, {OutSmoothElement({samples::pt(samples::q(1, 2), 0), {}},
                                                                     IntMatrix::identity(2))});
  struct Case {
    const char* label;
    ExtensionGroup::Omega omega;
    std::vector<std::int64_t> factors;
    std::int64_t order;
  };
  std::vector<Case> cases{
      {"trivial omega", [](const GroupElement&, const GroupElement&) { return GroupElement{0}; }, {2, 2}, 2},
      {"nontrivial omega", [](const GroupElement& a, const GroupElement& b) { return GroupElement{a[0] * b[0]}; },
       {4}, 4},
  };
  for (const auto& c : cases) {
    InflationReport r = inflate_by_extension(base.system, C2, c.omega).verify();
    o.require(r.ok(), std::string(c.label) + ": verification failed");
    o.require(r.invariant_factors == c.factors, std::string(c.label) + ": wrong group");
    o.require(r.lifted_order == c.order, std::string(c.label) + ": wrong lifted order");
  }
}

void out_soundness(Outcome& o) {
  auto th = theta_t();
  GaugeParameter s{RationalPoly::t() * make_rational(2, 3) + make_rational(1, 5), RationalPoly(make_rational(3, 7))};
  IntMatrix S = IntMatrix::from_rows({{0, 1}, {-1, 0}}), Si = IntMatrix::from_rows({{0, -1}, {1, 0}});
  IntMatrix T = IntMatrix::from_rows({{1, 1}, {0, 1}}), Ti = IntMatrix::from_rows({{1, -1}, {0, 1}});
  for (auto [M, Mi] : {std::pair{S, Si}, std::pair{T, Ti}})
    for (const auto& l : exponent_box(2, 3)) {
      TorusElement x = monomial(th, l);
      o.require(lattice_transform(gauge(lattice_transform(x, Mi), s), M) == gauge(x, rho_action(M, s)),
                "conjugation identity");
    }
  gen::Gen g(1008);
  for (int i = 0; i < 200; ++i) {
    OutSmoothElement x = g.out_element(), y = g.out_element(), z = g.out_element();
    o.require(out_mul(out_mul(x, y), z) == out_mul(x, out_mul(y, z)), "associativity");
    o.require(out_mul(x, OutSmoothElement::identity()) == x && out_mul(OutSmoothElement::identity(), x) == x,
              "identity");
    o.require(out_mul(x, out_inv(x)).is_identity() && out_mul(out_inv(x), x).is_identity(), "inverse");
  }
  RationalPoly t = RationalPoly::t();
  for (int i = 0; i < 50; ++i) {
    auto lattice_point = [&] { return TorusPoint::from_poly(t * Rational(static_cast<long>(g.integer(-9, 9))) + g.integer(-9, 9), t); };
    OutSmoothElement e{TorusPair{lattice_point(), lattice_point()}, IntMatrix::identity(2)};
    o.require(e.is_identity(), "lattice point not canonicalized");
  }
}

void negative_controls(Outcome& o) {
  ThetaMatrix theta = ThetaMatrix::two(RationalPoly::t());
  bool rejected = false;
  try {
    build_connected_covering(theta, IntMatrix::diagonal({2, 1}), ThetaMatrix::two(RationalPoly::t() * make_rational(1, 3)));
  } catch (const ConsistencyError&) {
    rejected = true;
  }
  o.require(rejected, "inconsistent theta' accepted");

  auto th = theta_t();
  FiniteAbelianGroup C2({2});
  SmoothBuild b = build_smooth_covering(th, C2, {OutSmoothElement({samples::pt(samples::q(1, 2), 0), {}},
                                                                  IntMatrix::identity(2))});
  SigmaTable perturbed = b.system.sigma();
  perturbed[1][0].phase += PhaseExponent(make_rational(1, 3));
  bool obstructed = false;
  try {
    solve_associativity(th, C2, b.system.alpha(), perturbed);
  } catch (const ObstructionError&) {
    obstructed = true;
  }
  o.require(obstructed, "perturbed sigma was not reported as obstructed");
  auto A = oracle::associator_table(th, C2, b.system.alpha(), perturbed);
  o.require(!oracle::search_cochain(C2, A, 12, true).has_value(), "exhaustive search found a normalized cochain");

  // A genuine class: alpha^2 = Ad[u] with alpha(u) = -u.
  OutSmoothElement phi({samples::pt(samples::q(1, 2), 0), samples::pt(0, samples::q(1, 2))}, IntMatrix::identity(2));
  bool genuine = false;
  try {
    build_smooth_covering(th, C2, {phi});
  } catch (const ObstructionError&) {
    genuine = true;
  }
  o.require(genuine, "obstructed homomorphism was built");
  HomomorphismReport h = check_homomorphism(C2, {phi});
  std::vector<TorusPair> lifts;
  std::vector<TorusAutomorphism> alpha;
  for (const auto& x : h.table) {
    lifts.push_back(x.w);
    alpha.push_back(realize(th, x.w, x.M));
  }
  auto B = oracle::associator_table(th, C2, alpha, compute_cocycle(th, C2, h.table, lifts));
  o.require(!oracle::search_cochain(C2, B, 12, false).has_value(), "exhaustive search absorbed the genuine class");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<void(Outcome&)> run;
  };
  std::vector<Criterion> criteria{
      {1, "twisted product equals swap normal ordering (1000 pairs)", 5, twisted_product_oracle},
      {2, "connected coverings for all HNF M with |det M| <= 6", 30, constructive_coverings},
      {3, "theta' corrections for diag(2,1), bound 1", 0, theta_relation_completeness},
      {4, "classification count up to index 4", 0, classification_count},
      {5, "smooth covering round trip for C2, C3, C2xC2", 60, smooth_round_trip},
      {6, "freeness and kernels for all subgroups of the dual of C2xC2", 0, freeness_lemma},
      {7, "inflation by C2 with both symmetric cocycles", 0, inflation_lemma},
      {8, "Out semidirect product soundness", 0, out_soundness},
      {9, "negative controls", 0, negative_controls},
  };
  bool all = true;
  for (const auto& c : criteria) {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0 && secs > c.budget_s) o.require(false, "over time budget");
    all = all && o.pass;
    std::printf("%s %d %s (%.2fs%s%s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.str().empty() ? "" : "; ", o.detail.str().c_str());
  }
  return all ? 0 : 1;
}
