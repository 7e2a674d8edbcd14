#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qtc/rational.hpp"

namespace qtc {

using GroupElement = std::vector<std::int64_t>;

/// Z/d_1 x ... x Z/d_k with elements as reduced exponent tuples. The
/// character group is identified with the same tuples through the pairing
/// chi(g) = e(sum_i g_i chi_i / d_i).
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<std::int64_t> factors);

  const std::vector<std::int64_t>& factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  std::int64_t order() const { return order_; }

  GroupElement zero() const { return GroupElement(factors_.size(), 0); }
  GroupElement generator(std::size_t i) const;
  GroupElement normalize(GroupElement g) const;
  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement neg(const GroupElement& a) const;
  GroupElement sub(const GroupElement& a, const GroupElement& b) const { return add(a, neg(b)); }
  GroupElement scale(const GroupElement& a, std::int64_t k) const;
  bool is_zero(const GroupElement& a) const;
  std::int64_t element_order(const GroupElement& a) const;

  /// All elements in lexicographic order.
  const std::vector<GroupElement>& elements() const { return elements_; }
  std::size_t index_of(const GroupElement& a) const;

  /// Exponent of chi(g), in [0, 1).
  Rational pairing(const GroupElement& g, const GroupElement& chi) const;

  /// Subgroup generated by `gens`, sorted.
  std::vector<GroupElement> generated(const std::vector<GroupElement>& gens) const;
  bool is_subgroup(const std::vector<GroupElement>& set) const;
  /// Elements of G killed by every character in `chars`.
  std::vector<GroupElement> annihilator(const std::vector<GroupElement>& chars) const;
  /// Every subgroup, each sorted, in order of size then contents.
  std::vector<std::vector<GroupElement>> subgroups() const;

  std::string to_string() const;

  friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    return a.factors_ == b.factors_;
  }

 private:
  std::vector<std::int64_t> factors_;
  std::int64_t order_ = 1;
  std::vector<GroupElement> elements_;
  std::map<GroupElement, std::size_t> index_;
};

/// G / S for a subgroup S, presented as a group in invariant-factor form.
struct GroupQuotient {
  FiniteAbelianGroup quotient;
  std::vector<GroupElement> subgroup;
  std::vector<GroupElement> projection_table;  // indexed by G.index_of
  std::vector<GroupElement> section_table;     // indexed by quotient.index_of

  const GroupElement& project(const FiniteAbelianGroup& G, const GroupElement& g) const {
    return projection_table.at(G.index_of(g));
  }
  const GroupElement& section(const GroupElement& h) const {
    return section_table.at(quotient.index_of(h));
  }
};

GroupQuotient quotient_by(const FiniteAbelianGroup& G, const std::vector<GroupElement>& subgroup_gens);

}  // namespace qtc
