#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qtc/torus.hpp"

namespace qtc {

struct ExprTerm;

/// Syntax tree of a torus-algebra expression.
///
///   expr   := ['+' | '-'] term {('+' | '-') term}
///   term   := factor {'*' factor}
///   factor := atom {'^' int | "'"}
///   atom   := 'u' [index] | 'v' | 'e(' poly ')' | rational | 'U(' int {',' int} ')' | '(' expr ')'
///
/// u1 = u and u2 = v; u3, u4, ... name the further generators.
class Expr {
 public:
  enum class Kind { Generator, Monomial, Phase, Number, Sum, Product, Power, Adjoint };

  using SumTerm = ExprTerm;

  static Expr generator(std::size_t index);
  static Expr monomial(Exponent lambda);
  static Expr phase(RationalPoly p);
  /// Nonnegative rational literal.
  static Expr number(Rational q);
  static Expr sum(std::vector<SumTerm> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr power(Expr base, std::int64_t k);
  static Expr adjoint(Expr operand);

  Kind kind() const { return node_->kind; }
  std::size_t index() const { return node_->index; }
  const Exponent& lambda() const { return node_->lambda; }
  const RationalPoly& poly() const { return node_->poly; }
  const Rational& number_value() const { return node_->number; }
  const std::vector<SumTerm>& terms() const { return node_->terms; }
  const std::vector<Expr>& children() const { return node_->children; }
  std::int64_t exponent() const { return node_->exponent; }

  /// Structural equality.
  friend bool operator==(const Expr& a, const Expr& b);

  std::string to_string() const;
  static Expr parse(std::string_view text);

 private:
  struct Node {
    Kind kind = Kind::Number;
    std::size_t index = 0;
    Exponent lambda;
    RationalPoly poly;
    Rational number;
    std::vector<SumTerm> terms;
    std::vector<Expr> children;
    std::int64_t exponent = 0;
  };

  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// One signed summand of a sum.
struct ExprTerm {
  bool negative = false;
  Expr term;
};

/// Throws InvalidArgument for generator indices outside the theta context
/// and DimensionMismatch for monomials of the wrong length.
TorusElement evaluate(const Expr& e, const ThetaPtr& theta);

/// Parses and evaluates in one step.
TorusElement parse_expr(std::string_view text, const ThetaPtr& theta);

}  // namespace qtc
