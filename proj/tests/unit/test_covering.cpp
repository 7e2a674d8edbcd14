#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "qtc/covering.hpp"
#include "qtc/errors.hpp"

using namespace qtc;

namespace {

ThetaMatrix theta_t() { return ThetaMatrix::two(RationalPoly::t()); }
RationalPoly half(const RationalPoly& p) { return p * make_rational(1, 2); }
IntMatrix skew(std::int64_t k) { return IntMatrix::from_rows({{0, k}, {-k, 0}}); }

}  // namespace

TEST_CASE("solving for theta prime") {
  IntMatrix M = IntMatrix::diagonal({2, 1});
  CHECK(solve_theta_prime(theta_t(), M, skew(0))(0, 1) == half(RationalPoly::t()));
  CHECK(solve_theta_prime(theta_t(), IntMatrix::identity(2), skew(0)) == theta_t());
  CHECK(solve_theta_prime(theta_t(), M, skew(1))(0, 1) == half(RationalPoly::t() + 1));
  CHECK_THROWS_AS(solve_theta_prime(theta_t(), IntMatrix::diagonal({2, 0}), skew(0)), SingularMatrix);
  CHECK_THROWS_AS(solve_theta_prime(theta_t(), M, IntMatrix::from_rows({{0, 1}, {1, 0}})), InvalidArgument);
}

TEST_CASE("enumerating theta corrections") {
  CHECK(enumerate_theta_corrections(theta_t(), IntMatrix::diagonal({2, 1}), 0).size() == 1);
  auto three = enumerate_theta_corrections(theta_t(), IntMatrix::diagonal({2, 1}), 1);
  std::set<RationalPoly> got;
  for (const auto& c : three) {
    got.insert(c.theta_prime(0, 1));
    CHECK(theta_relation_defect(theta_t(), IntMatrix::diagonal({2, 1}), c.theta_prime).has_value());
  }
  CHECK(got == std::set<RationalPoly>{half(RationalPoly::t() - 1), half(RationalPoly::t()), half(RationalPoly::t() + 1)});
  // theta +- 1 give isomorphic algebras; they are listed, not merged.
  CHECK(enumerate_theta_corrections(theta_t(), IntMatrix::identity(2), 1).size() == 3);
}

TEST_CASE("building connected coverings") {
  ThetaMatrix tp = ThetaMatrix::two(half(RationalPoly::t()));
  CoveringSystem sys = build_connected_covering(theta_t(), IntMatrix::diagonal({2, 1}), tp);
  CHECK(sys.embedding()[0] == monomial(sys.cover_theta(), {2, 0}));
  CHECK(sys.embedding()[1] == monomial(sys.cover_theta(), {0, 1}));
  CHECK(sys.embedding()[0] * sys.embedding()[1] ==
        (sys.embedding()[1] * sys.embedding()[0]).scaled(Scalar::phase(PhaseExponent::parse("t"))));

  CoveringSystem trivial = build_connected_covering(theta_t(), IntMatrix::identity(2), theta_t());
  CHECK(trivial.group().order() == 1);

  CoveringSystem klein = build_connected_covering(theta_t(), IntMatrix::diagonal({2, 2}),
                                                  ThetaMatrix::two(RationalPoly::t() * make_rational(1, 4)));
  CHECK(klein.group().invariant_factors() == IntVector{2, 2});
  std::set<RationalVector> params;
  for (const auto& m : klein.group().coset_reps()) params.insert(klein.action_parameter(m));
  Rational h = make_rational(1, 2);
  CHECK(params == std::set<RationalVector>{{0, 0}, {0, h}, {h, 0}, {h, h}});
}

TEST_CASE("checking connected coverings") {
  CoveringSystem sys = build_connected_covering(theta_t(), IntMatrix::diagonal({2, 1}),
                                                ThetaMatrix::two(half(RationalPoly::t())));
  CoveringReport rep = check_connected_covering(sys, 4);
  CHECK(rep.ok());
  CHECK(rep.failures.empty());
  CHECK(check_connected_covering(build_connected_covering(theta_t(), IntMatrix::identity(2), theta_t()), 4).ok());

  ThetaMatrix bad = ThetaMatrix::two(RationalPoly::t() * make_rational(1, 3));
  CHECK_THROWS_AS(build_connected_covering(theta_t(), IntMatrix::diagonal({2, 1}), bad), ConsistencyError);
  CoveringReport broken = check_connected_covering(build_covering_unchecked(theta_t(), IntMatrix::diagonal({2, 1}), bad), 4);
  CHECK_FALSE(broken.fixed_algebra);
  CHECK_FALSE(broken.ok());
}

TEST_CASE("classification tables") {
  CHECK(classify_coverings(theta_t(), 2, 0, 4, 1).size() == 4);
  auto single = classify_coverings(theta_t(), 1, 0, 4, 1);
  REQUIRE(single.size() == 1);
  CHECK(single[0].M_hnf == IntMatrix::identity(2));
  auto rows = classify_coverings(theta_t(), 4, 0, 3, 2);
  std::int64_t expected = 0;
  for (std::int64_t m = 1; m <= 4; ++m) expected += oracle::sigma1(m);
  CHECK(rows.size() == static_cast<std::size_t>(expected));
  for (const auto& r : rows) CHECK(r.checks.ok());
}

TEST_CASE("classification does not depend on the thread count") {
  auto a = classify_coverings(theta_t(), 3, 1, 2, 1);
  auto b = classify_coverings(theta_t(), 3, 1, 2, 3);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].M_hnf == b[i].M_hnf);
    CHECK(a[i].theta_prime == b[i].theta_prime);
  }
}

TEST_CASE("profinite tower") {
  ProfinitePoset chain = profinite_tower(1, 4);
  REQUIRE(chain.nodes.size() == 4);
  std::set<std::pair<long, long>> covers;
  for (const auto& e : chain.edges)
    if (e.cover) covers.insert({chain.nodes[e.from].hnf(0, 0).get_si(), chain.nodes[e.to].hnf(0, 0).get_si()});
  CHECK(covers == std::set<std::pair<long, long>>{{4, 2}, {2, 1}, {3, 1}});
  CHECK(chain.maps_well_defined);
  CHECK(chain.composition_consistent);

  CHECK(profinite_tower(2, 1).nodes.size() == 1);

  ProfinitePoset two = profinite_tower(2, 2);
  CHECK(two.nodes.size() == 4);
  for (const auto& e : two.edges) CHECK(abs(two.nodes[e.to].hnf.determinant()) == 1);
  CHECK(two.edges.size() == 3);
}

TEST_CASE("freeness of character supports") {
  FiniteAbelianGroup G({2, 2});
  FreenessResult full = check_freeness_ergodic(G.elements(), G);
  CHECK(full.free);
  CHECK(full.kernel == std::vector<GroupElement>{{0, 0}});
  FreenessResult half_support = check_freeness_ergodic({{0, 0}, {1, 0}}, G);
  CHECK_FALSE(half_support.free);
  CHECK(half_support.kernel == std::vector<GroupElement>{{0, 0}, {0, 1}});
  FreenessResult trivial = check_freeness_ergodic({GroupElement{}}, FiniteAbelianGroup(std::vector<std::int64_t>{}));
  CHECK(trivial.free);
  CHECK_THROWS_AS(check_freeness_ergodic({{1, 0}}, G), InvalidArgument);
}

TEST_CASE("property: every covering of index up to 6 passes with support 6") {
  for (const auto& H : enumerate_sublattices(2, 6)) {
    ThetaMatrix tp = solve_theta_prime(theta_t(), H, skew(0));
    CoveringReport rep = check_connected_covering(build_connected_covering(theta_t(), H, tp), 6);
    CHECK_MESSAGE(rep.ok(), H.to_string());
  }
}

TEST_CASE("property: kernel equals the brute-force annihilator") {
  for (auto factors : {std::vector<std::int64_t>{2, 2}, {4}, {2, 4}, {3, 3}}) {
    FiniteAbelianGroup G(factors);
    for (const auto& N : oracle::subgroups_bruteforce(G)) {
      FreenessResult r = check_freeness_ergodic({N.begin(), N.end()}, G);
      std::set<GroupElement> expected = oracle::annihilator_bruteforce(G, N);
      CHECK(std::set<GroupElement>(r.kernel.begin(), r.kernel.end()) == expected);
      CHECK(r.free == (N.size() == static_cast<std::size_t>(G.order())));
    }
  }
}
