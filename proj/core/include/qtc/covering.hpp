#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qtc/finite_abelian.hpp"
#include "qtc/lattice.hpp"
#include "qtc/torus.hpp"

namespace qtc {

/// theta' = M^{-1} (theta + K) M^{-T}. Throws SingularMatrix / InvalidArgument.
ThetaMatrix solve_theta_prime(const ThetaMatrix& theta, const IntMatrix& M, const IntMatrix& K);

/// The integer matrix M theta' M^T - theta, or nothing if it is not integral.
std::optional<IntMatrix> theta_relation_defect(const ThetaMatrix& theta, const IntMatrix& M,
                                               const ThetaMatrix& theta_prime);

struct ThetaCorrection {
  IntMatrix K;
  ThetaMatrix theta_prime;
};

/// One entry per skew K with |K_kl| <= bound, equal theta' dropped.
std::vector<ThetaCorrection> enumerate_theta_corrections(const ThetaMatrix& theta, const IntMatrix& M,
                                                         std::int64_t bound);

struct CoveringSpec {
  ThetaMatrix theta;
  IntMatrix M;
  IntMatrix K;
  ThetaMatrix theta_prime;
};

/// The quantum torus over theta' with the action of Z^n / M Z^n by gauge
/// transformations s(m) = M^{-1} m, and the base generators u_k embedded as
/// U(M^T e_k).
class CoveringSystem {
 public:
  CoveringSystem(CoveringSpec spec, bool verify_relation);

  const CoveringSpec& spec() const { return spec_; }
  const ThetaPtr& base_theta() const { return base_; }
  const ThetaPtr& cover_theta() const { return cover_; }
  const QuotientGroup& group() const { return group_; }
  /// Abstract group on the invariant-factor coordinates of group().
  const FiniteAbelianGroup& abstract_group() const { return abstract_; }
  const std::vector<TorusElement>& embedding() const { return embedding_; }

  /// M^{-1} m.
  RationalVector action_parameter(const IntVector& m) const;
  TorusElement act(const IntVector& m, const TorusElement& a) const;
  /// Image of a base element under u_k -> embedding()[k].
  TorusElement embed(const TorusElement& base_element) const;
  /// Gauge parameter of the lifted action on the cover: M^{-1} s.
  GaugeParameter lift_parameter(const GaugeParameter& s) const;

 private:
  CoveringSpec spec_;
  ThetaPtr base_;
  ThetaPtr cover_;
  QuotientGroup group_;
  FiniteAbelianGroup abstract_;
  RationalMatrix m_inverse_;
  std::vector<TorusElement> embedding_;
};

/// Throws ConsistencyError when M theta' M^T - theta is not integral.
CoveringSystem build_connected_covering(const ThetaMatrix& theta, const IntMatrix& M, const ThetaMatrix& theta_prime);
/// Same construction without the relation check (for negative controls).
CoveringSystem build_covering_unchecked(const ThetaMatrix& theta, const IntMatrix& M, const ThetaMatrix& theta_prime);

struct CoveringReport {
  bool action_well_defined = false;
  bool fixed_algebra = false;
  bool free = false;
  bool ergodic_lift = false;
  std::vector<std::string> failures;

  bool ok() const { return action_well_defined && fixed_algebra && free && ergodic_lift; }
};

CoveringReport check_connected_covering(const CoveringSystem& sys, std::int64_t support_bound);

struct ClassificationRow {
  IntMatrix M_hnf;
  IntVector invariant_factors;
  std::vector<IntVector> coset_reps;
  IntMatrix K;
  ThetaMatrix theta_prime;
  CoveringReport checks;
};

/// Rows per (sublattice, theta') for every HNF sublattice of index <=
/// max_index. `threads` = 0 reads QTC_THREADS, falling back to the hardware.
std::vector<ClassificationRow> classify_coverings(const ThetaMatrix& theta, std::int64_t max_index,
                                                  std::int64_t correction_bound, std::int64_t support_bound = 4,
                                                  unsigned threads = 0);

struct PosetNode {
  IntMatrix hnf;
  IntVector invariant_factors;
};

/// Inclusion from < to of lattices, i.e. a surjection Z^n/from -> Z^n/to,
/// as a matrix on invariant-factor coordinates.
struct PosetEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  bool cover = false;
  IntMatrix map;
};

struct ProfinitePoset {
  std::vector<PosetNode> nodes;
  std::vector<PosetEdge> edges;
  bool maps_well_defined = false;
  bool composition_consistent = false;
};

ProfinitePoset profinite_tower(std::size_t n, std::int64_t max_index);

struct FreenessResult {
  bool free = false;
  std::vector<GroupElement> kernel;
};

/// N is a set of characters of G (same coordinates). Throws InvalidArgument
/// when N is not a subgroup.
FreenessResult check_freeness_ergodic(const std::vector<GroupElement>& N, const FiniteAbelianGroup& G);
FreenessResult check_freeness_ergodic(const std::vector<GroupElement>& N, const QuotientGroup& G);

unsigned default_thread_count();

}  // namespace qtc
