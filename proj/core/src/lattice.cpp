#include "qtc/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <utility>

#include "qtc/errors.hpp"

namespace qtc {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<std::int64_t>& d) {
  IntMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = static_cast<long>(d[i]);
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  std::vector<IntVector> big;
  for (const auto& r : rows) {
    IntVector v;
    for (auto x : r) v.emplace_back(static_cast<long>(x));
    big.push_back(std::move(v));
  }
  return from_integer_rows(big);
}

IntMatrix IntMatrix::from_integer_rows(const std::vector<IntVector>& rows) {
  std::size_t c = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw DimensionMismatch("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

// Bareiss fraction-free elimination.
Integer IntMatrix::determinant() const {
  if (!is_square()) throw DimensionMismatch("determinant of a non-square matrix");
  std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix a = *this;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  Integer d = a(n - 1, n - 1);
  return sign > 0 ? d : Integer(-d);
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_skew() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != -(*this)(j, i)) return false;
  return true;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix sum shape mismatch");
  IntMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
  return c;
}

IntMatrix IntMatrix::operator-() const {
  IntMatrix c = *this;
  for (auto& x : c.data_) x = -x;
  return c;
}

IntVector IntMatrix::apply(const IntVector& x) const {
  if (x.size() != cols_) throw DimensionMismatch("matrix-vector shape mismatch");
  IntVector y(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
  return y;
}

std::strong_ordering operator<=>(const IntMatrix& a, const IntMatrix& b) {
  if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
  if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
  for (std::size_t k = 0; k < a.data_.size(); ++k) {
    int c = cmp(a.data_[k], b.data_[k]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::string IntMatrix::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) out += ",";
    out += "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out += ",";
      out += (*this)(i, j).get_str();
    }
    out += "]";
  }
  return out + "]";
}

namespace {

void swap_cols(IntMatrix& a, std::size_t x, std::size_t y) {
  for (std::size_t i = 0; i < a.rows(); ++i) std::swap(a(i, x), a(i, y));
}

void swap_rows(IntMatrix& a, std::size_t x, std::size_t y) {
  for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(x, j), a(y, j));
}

// col[dst] -= q * col[src]
void axpy_col(IntMatrix& a, std::size_t dst, std::size_t src, const Integer& q) {
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, dst) -= q * a(i, src);
}

void axpy_row(IntMatrix& a, std::size_t dst, std::size_t src, const Integer& q) {
  for (std::size_t j = 0; j < a.cols(); ++j) a(dst, j) -= q * a(src, j);
}

void negate_col(IntMatrix& a, std::size_t j) {
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, j) = -a(i, j);
}

void negate_row(IntMatrix& a, std::size_t i) {
  for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = -a(i, j);
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer trunc_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Column HNF of an n x k matrix, tracking the column operations in U (k x k).
// Returns false if some row has no pivot (rank deficient).
bool column_hnf(IntMatrix& H, IntMatrix& U) {
  std::size_t n = H.rows(), k = H.cols();
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= k) return false;
    while (true) {
      std::size_t best = k;
      for (std::size_t j = i; j < k; ++j)
        if (H(i, j) != 0 && (best == k || abs(H(i, j)) < abs(H(i, best)))) best = j;
      if (best == k) return false;
      if (best != i) {
        swap_cols(H, i, best);
        swap_cols(U, i, best);
      }
      bool done = true;
      for (std::size_t j = i + 1; j < k; ++j) {
        if (H(i, j) == 0) continue;
        Integer q = trunc_div(H(i, j), H(i, i));
        axpy_col(H, j, i, q);
        axpy_col(U, j, i, q);
        if (H(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (H(i, i) < 0) {
      negate_col(H, i);
      negate_col(U, i);
    }
    for (std::size_t j = 0; j < i; ++j) {
      Integer q = floor_div(H(i, j), H(i, i));
      if (q == 0) continue;
      axpy_col(H, j, i, q);
      axpy_col(U, j, i, q);
    }
  }
  return true;
}

}  // namespace

HermiteResult hermite_normal_form(const IntMatrix& M) {
  if (!M.is_square()) throw DimensionMismatch("hermite_normal_form needs a square matrix");
  HermiteResult r{M, IntMatrix::identity(M.cols())};
  if (!column_hnf(r.H, r.U)) throw SingularMatrix("hermite_normal_form of a singular matrix " + M.to_string());
  return r;
}

IntMatrix lattice_basis(const IntMatrix& generators) {
  IntMatrix H = generators;
  IntMatrix U = IntMatrix::identity(generators.cols());
  if (!column_hnf(H, U)) throw SingularMatrix("generators do not span a full-rank lattice");
  IntMatrix B(H.rows(), H.rows());
  for (std::size_t i = 0; i < H.rows(); ++i)
    for (std::size_t j = 0; j < H.rows(); ++j) B(i, j) = H(i, j);
  return B;
}

SmithResult smith_normal_form(const IntMatrix& M) {
  std::size_t m = M.rows(), n = M.cols();
  SmithResult r{M, IntMatrix::identity(m), IntMatrix::identity(n)};
  IntMatrix& A = r.D;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    while (true) {
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (A(i, j) != 0 && (pi == m || abs(A(i, j)) < abs(A(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == m) break;
      if (pi != t) {
        swap_rows(A, t, pi);
        swap_rows(r.U, t, pi);
      }
      if (pj != t) {
        swap_cols(A, t, pj);
        swap_cols(r.V, t, pj);
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (A(i, t) == 0) continue;
        Integer q = trunc_div(A(i, t), A(t, t));
        axpy_row(A, i, t, q);
        axpy_row(r.U, i, t, q);
        if (A(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (A(t, j) == 0) continue;
        Integer q = trunc_div(A(t, j), A(t, t));
        axpy_col(A, j, t, q);
        axpy_col(r.V, j, t, q);
        if (A(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold an offending row into row t and repeat.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (A(i, j) % A(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      axpy_row(A, t, bad, -1);
      axpy_row(r.U, t, bad, -1);
    }
    if (A(t, t) < 0) {
      negate_row(A, t);
      negate_row(r.U, t);
    }
  }
  return r;
}

QuotientGroup::QuotientGroup(const IntMatrix& M) {
  hnf_ = hermite_normal_form(M).H;
  std::size_t n = M.rows();
  SmithResult s = smith_normal_form(M);
  std::vector<IntVector> urows;
  for (std::size_t i = 0; i < n; ++i) {
    if (s.D(i, i) == 1) continue;
    factors_.push_back(s.D(i, i));
    urows.push_back(s.U.row(i));
  }
  smith_u_ = urows.empty() ? IntMatrix(0, n) : IntMatrix::from_integer_rows(urows);
  order_ = 1;
  for (std::size_t i = 0; i < n; ++i) order_ *= hnf_(i, i);

  IntVector cur(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      rep_by_coords_.emplace(coordinates(cur), reps_.size());
      reps_.push_back(cur);
      return;
    }
    for (Integer x = 0; x < hnf_(i, i); ++x) {
      cur[i] = x;
      rec(i + 1);
    }
    cur[i] = 0;
  };
  rec(0);
}

IntVector QuotientGroup::reduce(const IntVector& x) const {
  if (x.size() != dimension()) throw DimensionMismatch("vector dimension does not match lattice");
  IntVector y = x;
  for (std::size_t i = 0; i < y.size(); ++i) {
    Integer q = floor_div(y[i], hnf_(i, i));
    if (q == 0) continue;
    for (std::size_t r = i; r < y.size(); ++r) y[r] -= q * hnf_(r, i);
  }
  return y;
}

bool QuotientGroup::contains(const IntVector& x) const {
  IntVector y = reduce(x);
  return std::all_of(y.begin(), y.end(), [](const Integer& z) { return z == 0; });
}

IntVector QuotientGroup::coordinates(const IntVector& x) const {
  IntVector y = smith_u_.rows() ? smith_u_.apply(x) : IntVector{};
  for (std::size_t i = 0; i < y.size(); ++i) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), y[i].get_mpz_t(), factors_[i].get_mpz_t());
    y[i] = r;
  }
  return y;
}

IntVector QuotientGroup::from_coordinates(const IntVector& coords) const {
  IntVector c = coords;
  if (c.size() != factors_.size()) throw DimensionMismatch("coordinate count does not match invariant factors");
  for (std::size_t i = 0; i < c.size(); ++i) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), c[i].get_mpz_t(), factors_[i].get_mpz_t());
    c[i] = r;
  }
  return reps_.at(rep_by_coords_.at(c));
}

std::vector<IntMatrix> enumerate_sublattices(std::size_t n, std::int64_t max_index) {
  std::vector<IntMatrix> out;
  if (n == 0 || max_index < 1) return out;
  std::vector<std::int64_t> diag(n);
  IntMatrix H(n, n);
  // Fill off-diagonal entries of row i (columns j < i) in [0, diag[i]).
  std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t i, std::size_t j) {
    if (i == n) {
      out.push_back(H);
      return;
    }
    if (j == i) {
      H(i, i) = static_cast<long>(diag[i]);
      fill(i + 1, 0);
      return;
    }
    for (std::int64_t x = 0; x < diag[i]; ++x) {
      H(i, j) = static_cast<long>(x);
      fill(i, j + 1);
    }
    H(i, j) = 0;
  };
  std::function<void(std::size_t, std::int64_t)> choose = [&](std::size_t i, std::int64_t remaining) {
    if (i == n) {
      fill(0, 0);
      return;
    }
    for (std::int64_t d = 1; d <= remaining; ++d) {
      diag[i] = d;
      choose(i + 1, remaining / d);
    }
  };
  choose(0, max_index);
  std::sort(out.begin(), out.end(), [](const IntMatrix& a, const IntMatrix& b) {
    Integer da = a.determinant(), db = b.determinant();
    if (da != db) return da < db;
    return a < b;
  });
  return out;
}

namespace {

// Gauss-Jordan on [A | B] over Q; returns A^{-1} B.
RationalMatrix gauss_jordan(const IntMatrix& M, RationalMatrix rhs) {
  if (!M.is_square()) throw DimensionMismatch("linear solve needs a square matrix");
  std::size_t n = M.rows();
  RationalMatrix a(n, RationalVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = M(i, j);
  std::size_t w = rhs.empty() ? 0 : rhs.front().size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw SingularMatrix("singular matrix " + M.to_string());
    std::swap(a[p], a[c]);
    std::swap(rhs[p], rhs[c]);
    Rational inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (auto& x : rhs[c]) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = 0; j < n; ++j) a[i][j] -= f * a[c][j];
      for (std::size_t j = 0; j < w; ++j) rhs[i][j] -= f * rhs[c][j];
    }
  }
  return rhs;
}

}  // namespace

RationalMatrix rational_inverse(const IntMatrix& M) {
  std::size_t n = M.rows();
  RationalMatrix id(n, RationalVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return gauss_jordan(M, id);
}

RationalVector solve_rational(const IntMatrix& M, const RationalVector& b) {
  RationalMatrix rhs;
  for (const auto& x : b) rhs.push_back({x});
  RationalMatrix sol = gauss_jordan(M, rhs);
  RationalVector x;
  for (const auto& r : sol) x.push_back(r[0]);
  return x;
}

bool is_sublattice(const IntMatrix& A, const IntMatrix& B) {
  QuotientGroup q(B);
  for (std::size_t j = 0; j < A.cols(); ++j)
    if (!q.contains(A.column(j))) return false;
  return true;
}

}  // namespace qtc
