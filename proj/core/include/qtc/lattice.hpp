#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qtc/rational.hpp"

namespace qtc {

using IntVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

/// Dense integer matrix with arbitrary-precision entries, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(const std::vector<std::int64_t>& d);
  static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);
  static IntMatrix from_integer_rows(const std::vector<IntVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  IntVector column(std::size_t j) const;

  Integer determinant() const;
  IntMatrix transpose() const;
  bool is_skew() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  IntMatrix operator-() const;
  IntVector apply(const IntVector& x) const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
  /// Shape first, then entries in row-major order.
  friend std::strong_ordering operator<=>(const IntMatrix& a, const IntMatrix& b);

  /// "[[a,b],[c,d]]"
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

struct HermiteResult {
  IntMatrix H;
  IntMatrix U;
};

/// Column-style Hermite normal form H = M*U of a nonsingular square M:
/// H lower triangular, positive diagonal, 0 <= H(i,j) < H(i,i) for j < i.
HermiteResult hermite_normal_form(const IntMatrix& M);

/// HNF basis of the lattice spanned by the columns of an n x k matrix of
/// full row rank.
IntMatrix lattice_basis(const IntMatrix& generators);

struct SmithResult {
  IntMatrix D;
  IntMatrix U;
  IntMatrix V;
};

/// D = U*M*V diagonal with nonnegative d_1 | d_2 | ..., U and V unimodular.
SmithResult smith_normal_form(const IntMatrix& M);

/// The finite group Z^n / M Z^n.
class QuotientGroup {
 public:
  QuotientGroup() = default;
  explicit QuotientGroup(const IntMatrix& M);

  std::size_t dimension() const { return hnf_.rows(); }
  const IntMatrix& hnf() const { return hnf_; }
  /// Invariant factors greater than one.
  const IntVector& invariant_factors() const { return factors_; }
  const Integer& order() const { return order_; }
  /// Representatives in the fundamental box of the HNF, lexicographic.
  const std::vector<IntVector>& coset_reps() const { return reps_; }

  /// Canonical representative of x + M Z^n.
  IntVector reduce(const IntVector& x) const;
  bool contains(const IntVector& x) const;
  /// Coordinates of the class of x in the product of Z/d_i.
  IntVector coordinates(const IntVector& x) const;
  /// Canonical representative with the given invariant-factor coordinates.
  IntVector from_coordinates(const IntVector& coords) const;

 private:
  IntMatrix hnf_;
  IntMatrix smith_u_;  // rows belonging to factors > 1 only
  IntVector factors_;
  Integer order_ = 1;
  std::vector<IntVector> reps_;
  std::map<IntVector, std::size_t> rep_by_coords_;
};

inline QuotientGroup quotient_group(const IntMatrix& M) { return QuotientGroup(M); }

/// One HNF matrix per sublattice of Z^n of index <= max_index, sorted by
/// (index, entries).
std::vector<IntMatrix> enumerate_sublattices(std::size_t n, std::int64_t max_index);

/// Exact inverse over Q. Throws SingularMatrix.
RationalMatrix rational_inverse(const IntMatrix& M);

/// True iff A Z^n is contained in B Z^n.
bool is_sublattice(const IntMatrix& A, const IntMatrix& B);

/// Solves M x = b over Q. Throws SingularMatrix.
RationalVector solve_rational(const IntMatrix& M, const RationalVector& b);

}  // namespace qtc
