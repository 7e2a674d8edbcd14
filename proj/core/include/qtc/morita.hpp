#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qtc/torus.hpp"

namespace qtc {

/// The self-equivalence bimodule A_alpha: A as a left A-module by
/// multiplication, right action x.a = x alpha(a), and inner products
/// <x,y>_L = x y^* and <x,y>_R = alpha^{-1}(x^* y).
class MoritaModule {
 public:
  explicit MoritaModule(TorusAutomorphism alpha) : alpha_(std::move(alpha)) {}

  const TorusAutomorphism& automorphism() const { return alpha_; }

  TorusElement left(const TorusElement& a, const TorusElement& x) const { return a * x; }
  TorusElement right(const TorusElement& x, const TorusElement& a) const { return x * alpha_.apply(a); }
  TorusElement left_inner(const TorusElement& x, const TorusElement& y) const { return x * y.adjoint(); }
  TorusElement right_inner(const TorusElement& x, const TorusElement& y) const {
    return alpha_.apply_inverse(x.adjoint() * y);
  }

 private:
  TorusAutomorphism alpha_;
};

MoritaModule morita_module_of(const TorusAutomorphism& alpha);

struct MoritaReport {
  bool bimodule = false;
  bool left_inner_linear = false;
  bool right_inner_linear = false;
  bool inner_symmetric = false;
  bool compatible = false;
  std::vector<std::string> failures;

  bool ok() const { return bimodule && left_inner_linear && right_inner_linear && inner_symmetric && compatible; }
};

/// Bimodule and inner-product identities over all pairs and triples drawn
/// from `samples`.
MoritaReport check_morita_module(const MoritaModule& m, const std::vector<TorusElement>& samples);

}  // namespace qtc
