#include "qtc/json_io.hpp"

#include "qtc/errors.hpp"

namespace qtc::io {

namespace {

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw InvalidArgument("expected an integer, got " + j.dump());
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InvalidArgument("expected a rational, got " + j.dump());
}

json checks_json(const std::vector<std::pair<const char*, bool>>& flags, const std::vector<std::string>& failures) {
  json j = json::object();
  for (const auto& [name, v] : flags) j[name] = v;
  j["failures"] = failures;
  return j;
}

}  // namespace

json to_json(const IntMatrix& M) {
  json rows = json::array();
  for (std::size_t i = 0; i < M.rows(); ++i) rows.push_back(to_json(M.row(i)));
  return rows;
}

IntMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw InvalidArgument("matrix must be an array of rows");
  std::vector<IntVector> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw InvalidArgument("matrix row must be an array");
    IntVector row;
    for (const auto& x : r) row.push_back(integer_from_json(x));
    rows.push_back(std::move(row));
  }
  return IntMatrix::from_integer_rows(rows);
}

json to_json(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(qtc::to_string(x));
  return a;
}

json to_json(const GroupElement& g) {
  json a = json::array();
  for (auto x : g) a.push_back(x);
  return a;
}

json to_json(const ThetaMatrix& theta) {
  json rows = json::array();
  for (std::size_t k = 0; k < theta.dimension(); ++k) {
    json row = json::array();
    for (std::size_t l = 0; l < theta.dimension(); ++l) row.push_back(theta(k, l).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

ThetaMatrix theta_from_json(const json& j) {
  if (!j.is_array()) throw InvalidArgument("theta must be an array of rows");
  std::vector<std::vector<RationalPoly>> rows;
  for (const auto& r : j) {
    std::vector<RationalPoly> row;
    for (const auto& x : r) {
      if (x.is_number_integer())
        row.emplace_back(x.get<std::int64_t>());
      else if (x.is_string())
        row.push_back(RationalPoly::parse(x.get<std::string>()));
      else
        throw InvalidArgument("theta entries must be polynomial strings");
    }
    rows.push_back(std::move(row));
  }
  return ThetaMatrix(rows);
}

json to_json(const TorusElement& a) {
  json terms = json::array();
  for (const auto& [lambda, c] : a.terms()) terms.push_back({{"lambda", lambda}, {"coeff", c.to_string()}});
  return terms;
}

json to_json(const CoveringReport& r) {
  return checks_json({{"action_well_defined", r.action_well_defined},
                      {"fixed_algebra", r.fixed_algebra},
                      {"free", r.free},
                      {"ergodic_lift", r.ergodic_lift},
                      {"ok", r.ok()}},
                     r.failures);
}

json to_json(const ClassificationRow& row) {
  json reps = json::array();
  for (const auto& x : row.coset_reps) reps.push_back(to_json(x));
  return {{"M_hnf", to_json(row.M_hnf)},
          {"invariant_factors", to_json(row.invariant_factors)},
          {"coset_reps", reps},
          {"K", to_json(row.K)},
          {"theta_prime", to_json(row.theta_prime)},
          {"checks", to_json(row.checks)}};
}

json to_json(const ProfinitePoset& poset) {
  json nodes = json::array();
  for (std::size_t i = 0; i < poset.nodes.size(); ++i)
    nodes.push_back({{"id", i},
                     {"hnf", to_json(poset.nodes[i].hnf)},
                     {"invariant_factors", to_json(poset.nodes[i].invariant_factors)}});
  json edges = json::array();
  for (const auto& e : poset.edges)
    edges.push_back({{"from", e.from}, {"to", e.to}, {"cover", e.cover}, {"map", to_json(e.map)}});
  return {{"nodes", nodes},
          {"edges", edges},
          {"maps_well_defined", poset.maps_well_defined},
          {"composition_consistent", poset.composition_consistent}};
}

json to_json(const FreenessResult& r) {
  json kernel = json::array();
  for (const auto& g : r.kernel) kernel.push_back(to_json(g));
  return {{"free", r.free}, {"kernel", kernel}};
}

json to_json(const OutSmoothElement& x) {
  json w = json::array();
  for (const auto& p : x.w) w.push_back({qtc::to_string(p.a), qtc::to_string(p.b)});
  return {{"w", w}, {"M", to_json(x.M)}, {"text", x.to_string()}};
}

OutSmoothElement out_from_json(const json& j) {
  if (!j.is_object() || !j.contains("w")) throw InvalidArgument("Out element needs a 'w' field");
  const json& w = j.at("w");
  if (!w.is_array() || w.size() != 2) throw InvalidArgument("'w' must hold two points [a, b]");
  TorusPair pair;
  for (std::size_t i = 0; i < 2; ++i) {
    if (!w[i].is_array() || w[i].size() != 2) throw InvalidArgument("each point of 'w' is [a, b] for a + b*theta");
    pair[i] = TorusPoint(rational_from_json(w[i][0]), rational_from_json(w[i][1]));
  }
  IntMatrix M = j.contains("M") ? matrix_from_json(j.at("M")) : IntMatrix::identity(2);
  return OutSmoothElement(pair, M);
}

PhiSpec phi_from_json(const json& j) {
  if (!j.is_object() || !j.contains("group") || !j.contains("images"))
    throw InvalidArgument("phi needs 'group' and 'images'");
  std::vector<std::int64_t> factors;
  for (const auto& d : j.at("group")) factors.push_back(to_int64(integer_from_json(d)));
  PhiSpec phi{FiniteAbelianGroup(factors), {}};
  for (const auto& x : j.at("images")) phi.images.push_back(out_from_json(x));
  if (phi.images.size() != factors.size()) throw InvalidArgument("one image per group factor is required");
  return phi;
}

json to_json(const PhiSpec& phi) {
  json images = json::array();
  for (const auto& x : phi.images) images.push_back(to_json(x));
  return {{"group", phi.group.factors()}, {"images", images}};
}

json to_json(const GradedReport& r) {
  return checks_json({{"graded", r.graded},
                      {"associative", r.associative},
                      {"involution", r.involution},
                      {"unitary", r.unitary},
                      {"fixed_algebra", r.fixed_algebra},
                      {"picard", r.picard},
                      {"non_inner", r.non_inner},
                      {"ok", r.ok()}},
                     r.failures);
}

json to_json(const SmoothBuild& b) {
  const GradedSystem& sys = b.system;
  const auto& el = sys.group().elements();
  json characters = json::array();
  for (std::size_t i = 0; i < el.size(); ++i) {
    const TorusPair& lift = sys.lifts()[i];
    characters.push_back({{"chi", to_json(el[i])},
                          {"phi", to_json(sys.phi()[i])},
                          {"lift", {lift[0].to_string(), lift[1].to_string()}}});
  }
  json sigma = json::array();
  for (std::size_t i = 0; i < el.size(); ++i)
    for (std::size_t j = 0; j < el.size(); ++j)
      sigma.push_back({{"chi1", to_json(el[i])},
                       {"chi2", to_json(el[j])},
                       {"sigma", sys.sigma()[i][j].element(sys.theta()).to_string()}});
  json kernel = json::array();
  for (const auto& g : b.kernel) kernel.push_back(to_json(g));
  return {{"group", sys.group().factors()},
          {"injective", b.homomorphism.injective},
          {"reduced_from_quotient", b.reduced},
          {"kernel", kernel},
          {"already_associative", b.associativity.already_associative},
          {"characters", characters},
          {"sigma", sigma},
          {"checks", to_json(b.report)}};
}

}  // namespace qtc::io
