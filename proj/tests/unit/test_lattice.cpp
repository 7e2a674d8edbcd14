#include <doctest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "qtc/errors.hpp"
#include "qtc/finite_abelian.hpp"
#include "qtc/lattice.hpp"

using namespace qtc;

namespace {

IntMatrix mat(std::vector<std::vector<std::int64_t>> rows) { return IntMatrix::from_rows(rows); }

// Columns of A lie in the column lattice of B.
bool columns_inside(const IntMatrix& A, const IntMatrix& B) { return is_sublattice(A, B); }

bool is_hnf(const IntMatrix& H) {
  for (std::size_t i = 0; i < H.rows(); ++i) {
    if (H(i, i) <= 0) return false;
    for (std::size_t j = i + 1; j < H.cols(); ++j)
      if (H(i, j) != 0) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (H(i, j) < 0 || H(i, j) >= H(i, i)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("Hermite normal form") {
  auto [H, U] = hermite_normal_form(mat({{2, 1}, {0, 3}}));
  CHECK(is_hnf(H));
  CHECK(H == mat({{1, 0}, {3, 6}}));
  CHECK(mat({{2, 1}, {0, 3}}) * U == H);
  CHECK(abs(U.determinant()) == 1);
  CHECK(hermite_normal_form(IntMatrix::identity(3)).H == IntMatrix::identity(3));
  CHECK(hermite_normal_form(mat({{0, 1}, {1, 0}})).H == IntMatrix::identity(2));
  CHECK_THROWS_AS(hermite_normal_form(mat({{1, 2}, {2, 4}})), SingularMatrix);
}

TEST_CASE("Smith normal form") {
  CHECK(smith_normal_form(IntMatrix::diagonal({2, 3})).D == IntMatrix::diagonal({1, 6}));
  CHECK(smith_normal_form(IntMatrix::diagonal({2, 2})).D == IntMatrix::diagonal({2, 2}));
  CHECK(smith_normal_form(mat({{1, 1}, {0, 2}})).D == IntMatrix::diagonal({1, 2}));
  IntMatrix M = mat({{4, 6, 2}, {2, 8, 6}, {0, 2, 10}});
  SmithResult s = smith_normal_form(M);
  CHECK(s.U * M * s.V == s.D);
  CHECK(abs(s.D.determinant()) == abs(M.determinant()));
}

TEST_CASE("quotient groups") {
  QuotientGroup q(IntMatrix::diagonal({2, 2}));
  CHECK(q.invariant_factors() == IntVector{2, 2});
  CHECK(q.order() == 4);
  QuotientGroup q2(mat({{1, 1}, {0, 2}}));
  CHECK(q2.invariant_factors() == IntVector{2});
  CHECK(q2.order() == 2);
  QuotientGroup q3(IntMatrix::diagonal({2, 1}));
  CHECK(q3.invariant_factors() == IntVector{2});
  CHECK(q3.coset_reps() == std::vector<IntVector>{{0, 0}, {1, 0}});
  CHECK(q3.contains({4, 7}));
  CHECK_FALSE(q3.contains({3, 0}));
  CHECK_THROWS_AS(QuotientGroup(mat({{1, 1}, {1, 1}})), SingularMatrix);
}

TEST_CASE("sublattice enumeration") {
  auto count = [](std::int64_t m) {
    std::size_t c = 0;
    for (const auto& H : enumerate_sublattices(2, m))
      if (abs(H.determinant()) == m) ++c;
    return c;
  };
  CHECK(count(2) == 3);
  CHECK(count(4) == 7);
  CHECK(enumerate_sublattices(3, 1) == std::vector<IntMatrix>{IntMatrix::identity(3)});
  auto all = enumerate_sublattices(2, 6);
  for (std::size_t i = 1; i < all.size(); ++i) {
    CHECK(abs(all[i - 1].determinant()) <= abs(all[i].determinant()));
  }
}

TEST_CASE("property: sublattice counts match sigma_1 and brute force up to 12") {
  auto all = enumerate_sublattices(2, 12);
  for (std::int64_t m = 1; m <= 12; ++m) {
    std::size_t c = 0;
    for (const auto& H : all)
      if (abs(H.determinant()) == m) ++c;
    CHECK(c == static_cast<std::size_t>(oracle::sigma1(m)));
    if (m <= 6) CHECK(c == oracle::count_index_m_sublattices_bruteforce(m));
  }
}

TEST_CASE("property: HNF spans the same lattice; SNF invariants") {
  gen::Gen g(21);
  int done = 0;
  while (done < 120) {
    std::size_t n = static_cast<std::size_t>(g.integer(2, 3));
    IntMatrix M(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) M(i, j) = static_cast<long>(g.integer(-5, 5));
    if (M.determinant() == 0) continue;
    ++done;
    auto [H, U] = hermite_normal_form(M);
    CHECK(is_hnf(H));
    CHECK(M * U == H);
    CHECK(columns_inside(H, M));
    CHECK(columns_inside(M, H));
    SmithResult s = smith_normal_form(M);
    CHECK(s.U * M * s.V == s.D);
    CHECK(abs(s.U.determinant()) == 1);
    CHECK(abs(s.V.determinant()) == 1);
    CHECK(abs(s.D.determinant()) == abs(M.determinant()));
    for (std::size_t i = 0; i + 1 < n; ++i)
      if (s.D(i, i) != 0) CHECK(s.D(i + 1, i + 1) % s.D(i, i) == 0);
    if (abs(M.determinant()) <= 60) {
      QuotientGroup q(M);
      CHECK(q.coset_reps().size() == q.order().get_ui());
      const auto& reps = q.coset_reps();
      for (std::size_t a = 0; a < reps.size(); ++a)
        for (std::size_t b = a + 1; b < reps.size(); ++b) {
          IntVector d(n);
          for (std::size_t i = 0; i < n; ++i) d[i] = reps[a][i] - reps[b][i];
          CHECK_FALSE(q.contains(d));
        }
    }
  }
}

TEST_CASE("finite abelian groups and their duals") {
  FiniteAbelianGroup G({2, 2});
  CHECK(G.order() == 4);
  CHECK(G.subgroups().size() == 5);
  CHECK(G.pairing({1, 0}, {1, 1}) == make_rational(1, 2));
  CHECK(G.annihilator({{1, 0}}) == std::vector<GroupElement>{{0, 0}, {0, 1}});
  FiniteAbelianGroup C4({4});
  CHECK(C4.element_order({2}) == 2);
  CHECK(C4.generated({{2}}).size() == 2);
  GroupQuotient q = quotient_by(FiniteAbelianGroup({2, 4}), {{0, 2}});
  CHECK(q.quotient.factors() == std::vector<std::int64_t>{2, 2});
  for (const auto& h : q.quotient.elements()) {
    CHECK(q.project(FiniteAbelianGroup({2, 4}), q.section(h)) == h);
  }
}
