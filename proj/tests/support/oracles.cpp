#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace qtc::oracle {

std::pair<RationalPoly, Exponent> swap_normal_order(const ThetaMatrix& theta, const Exponent& lambda,
                                                    const Exponent& mu) {
  struct Letter {
    std::size_t gen;
    int sign;
  };
  std::vector<Letter> word;
  for (const Exponent* e : {&lambda, &mu})
    for (std::size_t k = 0; k < e->size(); ++k)
      for (std::int64_t i = 0; i < std::abs((*e)[k]); ++i) word.push_back({k, (*e)[k] > 0 ? 1 : -1});

  RationalPoly phase;
  bool swapped = true;
  while (swapped) {
    swapped = false;
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
      Letter a = word[i], b = word[i + 1];
      if (a.gen <= b.gen) continue;
      phase += theta(a.gen, b.gen) * Rational(a.sign * b.sign);
      std::swap(word[i], word[i + 1]);
      swapped = true;
    }
  }
  Exponent out(lambda.size(), 0);
  for (const auto& l : word) out[l.gen] += l.sign;
  return {phase, out};
}

std::int64_t sigma1(std::int64_t m) {
  std::int64_t s = 0;
  for (std::int64_t d = 1; d <= m; ++d)
    if (m % d == 0) s += d;
  return s;
}

std::size_t count_index_m_sublattices_bruteforce(std::int64_t m) {
  using V = std::pair<std::int64_t, std::int64_t>;
  std::set<std::set<V>> found;
  for (std::int64_t a = 0; a < m; ++a)
    for (std::int64_t b = 0; b < m; ++b)
      for (std::int64_t c = 0; c < m; ++c)
        for (std::int64_t d = 0; d < m; ++d) {
          std::set<V> H;
          for (std::int64_t i = 0; i < m; ++i)
            for (std::int64_t j = 0; j < m; ++j) H.insert({(i * a + j * c) % m, (i * b + j * d) % m});
          if (static_cast<std::int64_t>(H.size()) == m) found.insert(H);
        }
  return found.size();
}

std::vector<std::set<GroupElement>> subgroups_bruteforce(const FiniteAbelianGroup& G) {
  const auto& el = G.elements();
  if (el.size() > 16) throw std::invalid_argument("brute-force subgroup search is for tiny groups");
  std::vector<std::set<GroupElement>> out;
  for (std::uint32_t mask = 0; mask < (1u << el.size()); ++mask) {
    std::set<GroupElement> S;
    for (std::size_t i = 0; i < el.size(); ++i)
      if (mask & (1u << i)) S.insert(el[i]);
    if (!S.count(G.zero())) continue;
    bool closed = true;
    for (const auto& x : S)
      for (const auto& y : S)
        if (!S.count(G.add(x, y))) closed = false;
    if (closed) out.push_back(S);
  }
  return out;
}

std::set<GroupElement> annihilator_bruteforce(const FiniteAbelianGroup& G, const std::set<GroupElement>& N) {
  std::set<GroupElement> out;
  for (const auto& g : G.elements()) {
    bool killed = true;
    for (const auto& chi : N) {
      Rational s = 0;
      for (std::size_t i = 0; i < g.size(); ++i)
        s += Rational(static_cast<long>(g[i] * chi[i]), static_cast<long>(G.factors()[i]));
      s.canonicalize();
      if (s.get_den() != 1) killed = false;
    }
    if (killed) out.insert(g);
  }
  return out;
}

AssociatorTable associator_table(const ThetaPtr& theta, const FiniteAbelianGroup& G,
                                 const std::vector<TorusAutomorphism>& alpha, const SigmaTable& sigma) {
  std::size_t n = G.elements().size();
  AssociatorTable A(n, std::vector<std::vector<PhaseExponent>>(n, std::vector<PhaseExponent>(n)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) A[i][j][k] = associator(theta, G, alpha, sigma, i, j, k);
  return A;
}

std::optional<std::vector<std::vector<Rational>>> search_cochain(const FiniteAbelianGroup& G,
                                                                 const AssociatorTable& A, std::int64_t denominator,
                                                                 bool normalized) {
  const auto& el = G.elements();
  std::size_t n = el.size();
  std::vector<std::vector<std::size_t>> mul(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mul[i][j] = G.index_of(G.add(el[i], el[j]));
  for (const auto& plane : A)
    for (const auto& row : plane)
      for (const auto& a : row)
        if (!a.poly().is_constant()) throw std::invalid_argument("search_cochain needs constant associators");

  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!normalized || (i != 0 && j != 0)) slots.emplace_back(i, j);

  std::vector<std::vector<Rational>> beta(n, std::vector<Rational>(n, Rational(0)));
  auto works = [&]() {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          Rational v = A[i][j][k].poly().constant() + beta[i][j] + beta[mul[i][j]][k] - beta[j][k] -
                       beta[i][mul[j][k]];
          if (v.get_den() != 1) return false;
        }
    return true;
  };
  std::function<bool(std::size_t)> rec = [&](std::size_t s) {
    if (s == slots.size()) return works();
    for (std::int64_t k = 0; k < denominator; ++k) {
      beta[slots[s].first][slots[s].second] = Rational(static_cast<long>(k), static_cast<long>(denominator));
      beta[slots[s].first][slots[s].second].canonicalize();
      if (rec(s + 1)) return true;
    }
    return false;
  };
  if (rec(0)) return beta;
  return std::nullopt;
}

}  // namespace qtc::oracle
