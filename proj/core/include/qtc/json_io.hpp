#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "qtc/covering.hpp"
#include "qtc/smooth.hpp"

namespace qtc::io {

using nlohmann::json;

/// Row-major arrays of integer strings. Reading also accepts JSON integers.
json to_json(const IntMatrix& M);
IntMatrix matrix_from_json(const json& j);

json to_json(const IntVector& v);
json to_json(const GroupElement& g);

/// Arrays of polynomial strings.
json to_json(const ThetaMatrix& theta);
ThetaMatrix theta_from_json(const json& j);

/// [{"lambda": [..], "coeff": "..."}], ordered by exponent.
json to_json(const TorusElement& a);

json to_json(const CoveringReport& r);
json to_json(const ClassificationRow& row);
json to_json(const ProfinitePoset& poset);
json to_json(const FreenessResult& r);

/// {"w": [[a, b], [a, b]], "M": [[..], [..]]} where each point is a + b*theta.
json to_json(const OutSmoothElement& x);
OutSmoothElement out_from_json(const json& j);

struct PhiSpec {
  FiniteAbelianGroup group;
  std::vector<OutSmoothElement> images;
};

/// {"group": [d1, ...], "images": [...]}, one image per generator.
PhiSpec phi_from_json(const json& j);
json to_json(const PhiSpec& phi);

json to_json(const GradedReport& r);
json to_json(const SmoothBuild& b);

}  // namespace qtc::io
