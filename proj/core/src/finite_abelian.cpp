#include "qtc/finite_abelian.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "qtc/errors.hpp"
#include "qtc/lattice.hpp"

namespace qtc {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::int64_t> factors) : factors_(std::move(factors)) {
  order_ = 1;
  for (auto d : factors_) {
    if (d < 1) throw InvalidArgument("group factors must be positive");
    order_ *= d;
    if (order_ > 100000) throw InvalidArgument("finite group too large to enumerate");
  }
  GroupElement cur(factors_.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == factors_.size()) {
      index_.emplace(cur, elements_.size());
      elements_.push_back(cur);
      return;
    }
    for (std::int64_t x = 0; x < factors_[i]; ++x) {
      cur[i] = x;
      rec(i + 1);
    }
    cur[i] = 0;
  };
  rec(0);
}

GroupElement FiniteAbelianGroup::generator(std::size_t i) const {
  GroupElement g = zero();
  g.at(i) = 1;
  return normalize(g);
}

GroupElement FiniteAbelianGroup::normalize(GroupElement g) const {
  if (g.size() != factors_.size()) throw DimensionMismatch("group element has wrong rank");
  for (std::size_t i = 0; i < g.size(); ++i) {
    g[i] %= factors_[i];
    if (g[i] < 0) g[i] += factors_[i];
  }
  return g;
}

GroupElement FiniteAbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
  if (a.size() != factors_.size() || b.size() != factors_.size())
    throw DimensionMismatch("group element has wrong rank");
  GroupElement c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return normalize(c);
}

GroupElement FiniteAbelianGroup::neg(const GroupElement& a) const {
  GroupElement c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
  return normalize(c);
}

GroupElement FiniteAbelianGroup::scale(const GroupElement& a, std::int64_t k) const {
  GroupElement c = normalize(a);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = (c[i] * (k % factors_[i])) % factors_[i];
  return normalize(c);
}

bool FiniteAbelianGroup::is_zero(const GroupElement& a) const {
  GroupElement n = normalize(a);
  return std::all_of(n.begin(), n.end(), [](std::int64_t x) { return x == 0; });
}

std::int64_t FiniteAbelianGroup::element_order(const GroupElement& a) const {
  std::int64_t k = 1;
  GroupElement x = normalize(a);
  while (!is_zero(x)) {
    x = add(x, a);
    ++k;
  }
  return k;
}

std::size_t FiniteAbelianGroup::index_of(const GroupElement& a) const {
  return index_.at(normalize(a));
}

Rational FiniteAbelianGroup::pairing(const GroupElement& g, const GroupElement& chi) const {
  if (g.size() != factors_.size() || chi.size() != factors_.size())
    throw DimensionMismatch("pairing arguments have wrong rank");
  Rational s = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    s += make_rational(Integer(static_cast<long>(g[i])) * static_cast<long>(chi[i]),
                       static_cast<long>(factors_[i]));
  return frac(s);
}

std::vector<GroupElement> FiniteAbelianGroup::generated(const std::vector<GroupElement>& gens) const {
  std::set<GroupElement> seen{zero()};
  std::vector<GroupElement> frontier{zero()};
  while (!frontier.empty()) {
    std::vector<GroupElement> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        GroupElement y = add(x, g);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

bool FiniteAbelianGroup::is_subgroup(const std::vector<GroupElement>& set) const {
  std::set<GroupElement> s;
  for (const auto& x : set) s.insert(normalize(x));
  if (!s.count(zero())) return false;
  for (const auto& a : s)
    for (const auto& b : s)
      if (!s.count(sub(a, b))) return false;
  return true;
}

std::vector<GroupElement> FiniteAbelianGroup::annihilator(const std::vector<GroupElement>& chars) const {
  std::vector<GroupElement> out;
  for (const auto& g : elements_) {
    bool killed = std::all_of(chars.begin(), chars.end(), [&](const GroupElement& c) { return pairing(g, c) == 0; });
    if (killed) out.push_back(g);
  }
  return out;
}

std::vector<std::vector<GroupElement>> FiniteAbelianGroup::subgroups() const {
  // Every subgroup of a group of rank k is generated by at most k elements.
  std::set<std::vector<GroupElement>> found;
  std::vector<GroupElement> gens;
  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    found.insert(generated(gens));
    if (depth == rank()) return;
    for (const auto& g : elements_) {
      gens.push_back(g);
      rec(depth + 1);
      gens.pop_back();
    }
  };
  rec(0);
  std::vector<std::vector<GroupElement>> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

std::string FiniteAbelianGroup::to_string() const {
  if (factors_.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) out += " x ";
    out += "Z/" + std::to_string(factors_[i]);
  }
  return out;
}

GroupQuotient quotient_by(const FiniteAbelianGroup& G, const std::vector<GroupElement>& subgroup_gens) {
  std::size_t k = G.rank();
  GroupQuotient out;
  out.subgroup = G.generated(subgroup_gens);
  if (k == 0) {
    out.quotient = FiniteAbelianGroup(std::vector<std::int64_t>{});
    out.projection_table = {GroupElement{}};
    out.section_table = {GroupElement{}};
    return out;
  }
  // Relations of G/S: d_i e_i and the generators of S.
  IntMatrix rel(k, k + subgroup_gens.size());
  for (std::size_t i = 0; i < k; ++i) rel(i, i) = static_cast<long>(G.factors()[i]);
  for (std::size_t j = 0; j < subgroup_gens.size(); ++j) {
    GroupElement s = G.normalize(subgroup_gens[j]);
    for (std::size_t i = 0; i < k; ++i) rel(i, k + j) = static_cast<long>(s[i]);
  }
  QuotientGroup q(lattice_basis(rel));
  std::vector<std::int64_t> qf;
  for (const auto& d : q.invariant_factors()) qf.push_back(to_int64(d));
  out.quotient = FiniteAbelianGroup(qf);

  auto to_group = [](const IntVector& v) {
    GroupElement g;
    for (const auto& x : v) g.push_back(to_int64(x));
    return g;
  };
  for (const auto& g : G.elements()) {
    IntVector v;
    for (auto x : g) v.emplace_back(static_cast<long>(x));
    out.projection_table.push_back(to_group(q.coordinates(v)));
  }
  for (const auto& h : out.quotient.elements()) {
    IntVector c;
    for (auto x : h) c.emplace_back(static_cast<long>(x));
    out.section_table.push_back(G.normalize(to_group(q.from_coordinates(c))));
  }
  return out;
}

}  // namespace qtc
