#pragma once

// Expression trees for positive real functions of one variable, a small
// recursive-descent parser for them, and the parametric families used by
// sweeps.

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace hhv {

enum class NodeKind { Constant, Variable, Neg, Exp, Ln, Sqrt, Add, Sub, Mul, Div, Pow };

struct Node {
  NodeKind kind;
  double value = 0.0;  // Constant only
  std::shared_ptr<const Node> lhs;  // operand of unary nodes
  std::shared_ptr<const Node> rhs;
};

/// Immutable expression for f(x). Copies share the tree.
class FunctionExpr {
 public:
  static FunctionExpr constant(double c);
  static FunctionExpr variable();
  static FunctionExpr unary(NodeKind kind, const FunctionExpr& operand);
  static FunctionExpr binary(NodeKind kind, const FunctionExpr& lhs, const FunctionExpr& rhs);

  const Node& root() const noexcept { return *root_; }

  /// Raw value of the tree at x. Throws DomainError for ln/sqrt of
  /// out-of-domain values, division by zero, 0^negative and any non-finite
  /// intermediate. Does not check the sign of the result.
  double eval_raw(double x) const;

  /// f(x); additionally throws PositivityError unless the result is > 0.
  double operator()(double x) const;

  /// Fully parenthesized text that parse() maps back to an equal tree.
  std::string to_string() const;

  /// Structural equality (constants compared bitwise).
  friend bool operator==(const FunctionExpr& a, const FunctionExpr& b);

 private:
  explicit FunctionExpr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

/// Parses the expression grammar:
///   expr   := term (("+"|"-") term)*
///   term   := factor (("*"|"/") factor)*
///   factor := "-" factor | power
///   power  := atom ("^" factor)?
///   atom   := NUMBER | "x" | "e" | "pi" | FUNC "(" expr ")" | "(" expr ")"
/// Throws ParseError / UnknownIdentifier carrying the byte offset.
FunctionExpr parse(std::string_view text);

/// f(x) with the positivity contract; same as `f(x)`.
inline double evaluate(const FunctionExpr& f, double x) { return f(x); }

/// A registered parametric family and its parameter values.
struct FamilySpec {
  std::string name;
  std::map<std::string, double> params;

  /// "exp_affine(c=0.5,k=1)"; parameters in name order.
  std::string to_string() const;
  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

/// Families: const(c), exp_linear(k), exp_affine(c,k), poly_shift(p,q).
/// Throws InvalidArgument for an unknown family, missing/extra parameters,
/// or c <= 0 / q <= 0.
FunctionExpr family_instantiate(const FamilySpec& spec);

/// Parses "name(p=v,...)" into a FamilySpec (validated against the registry).
FamilySpec parse_family(std::string_view text);

/// Parameter names of a registered family, in declaration order.
const std::vector<std::string>& family_parameters(const std::string& name);

}  // namespace hhv
