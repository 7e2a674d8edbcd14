#include "qtc/morita.hpp"

namespace qtc {

MoritaModule morita_module_of(const TorusAutomorphism& alpha) { return MoritaModule(alpha); }

MoritaReport check_morita_module(const MoritaModule& m, const std::vector<TorusElement>& samples) {
  MoritaReport r;
  r.bimodule = r.left_inner_linear = r.right_inner_linear = r.inner_symmetric = r.compatible = true;
  auto fail = [&r](bool& flag, const std::string& what) {
    flag = false;
    if (r.failures.size() < 16) r.failures.push_back(what);
  };
  for (const auto& x : samples)
    for (const auto& y : samples) {
      if (m.left_inner(x, y).adjoint() != m.left_inner(y, x)) fail(r.inner_symmetric, "<x,y>_L^* != <y,x>_L");
      if (m.right_inner(x, y).adjoint() != m.right_inner(y, x)) fail(r.inner_symmetric, "<x,y>_R^* != <y,x>_R");
      for (const auto& z : samples) {
        const TorusElement& a = y;
        const TorusElement& b = z;
        if (m.right(m.left(a, x), b) != m.left(a, m.right(x, b))) fail(r.bimodule, "(a.x).b != a.(x.b)");
        if (m.right(m.right(x, a), b) != m.right(x, a * b)) fail(r.bimodule, "(x.a).b != x.(ab)");
        if (m.left(a, m.left(b, x)) != m.left(a * b, x)) fail(r.bimodule, "a.(b.x) != (ab).x");
        if (m.left_inner(m.left(b, x), y) != b * m.left_inner(x, y)) fail(r.left_inner_linear, "<b.x,y>_L");
        if (m.right_inner(x, m.right(y, b)) != m.right_inner(x, y) * b) fail(r.right_inner_linear, "<x,y.b>_R");
        if (m.left(m.left_inner(x, y), z) != m.right(x, m.right_inner(y, z)))
          fail(r.compatible, "<x,y>_L.z != x.<y,z>_R");
      }
    }
  return r;
}

}  // namespace qtc
