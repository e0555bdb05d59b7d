#pragma once

// Expression trees for user-supplied functions of one variable.
//
// Grammar (loosest to tightest):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right-associative
//   primary := number | 'pi' | variable | func '(' expr ')' | '(' expr ')'
//   func    := exp | sin | cos | sqrt | log
// There is no implicit multiplication. Numeric literals are kept as decimal
// text and converted only when compiled at a given precision.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ici/mpcomplex.hpp"
#include "ici/mpreal.hpp"

namespace ici {

enum class BinaryOp { add, sub, mul, div, pow };
enum class UnaryFunction { exp, sin, cos, sqrt, log };

class Expr;

namespace expr_node {

struct Number {
  std::string text;
};
struct Pi {};
struct Variable {
  std::string name;
};
struct Negate {
  std::shared_ptr<const Expr> operand;
};
struct Binary {
  BinaryOp op;
  std::shared_ptr<const Expr> lhs;
  std::shared_ptr<const Expr> rhs;
};
struct Call {
  UnaryFunction fn;
  std::shared_ptr<const Expr> arg;
};

}  // namespace expr_node

/// Immutable expression tree node; children are shared.
class Expr {
 public:
  using Node = std::variant<expr_node::Number, expr_node::Pi, expr_node::Variable, expr_node::Negate,
                            expr_node::Binary, expr_node::Call>;

  static Expr number(std::string text);
  static Expr integer(long value);
  static Expr pi();
  static Expr variable(std::string name);
  static Expr negate(Expr operand);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
  static Expr call(UnaryFunction fn, Expr arg);

  const Node& node() const noexcept { return node_; }

  /// Fully parenthesized canonical text; parse(render()) reproduces the tree.
  std::string render() const;

  bool depends_on(std::string_view var) const;
  /// Name of the variable the tree uses, if any.
  std::optional<std::string> variable_name() const;
  /// Exact integer value for integer literals (possibly negated).
  std::optional<long> integer_value() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  explicit Expr(Node node) : node_(std::move(node)) {}
  Node node_;
};

struct ParseOptions {
  /// Identifiers accepted as the free variable.
  std::vector<std::string> variables{"x", "z"};
};

/// Throws ParseError (syntax errors and unknown identifiers, with byte offset).
Expr parse(std::string_view text, const ParseOptions& options = {});

/// Exact symbolic derivative with light folding (0/1 identities, integer
/// literal arithmetic).
Expr differentiate(const Expr& e, std::string_view var);

/// Straight evaluation; real-mode domain errors yield NaN.
MPReal eval(const Expr& e, const MPReal& x, Precision p);
MPComplex eval(const Expr& e, const MPComplex& z, Precision p);

std::string_view function_name(UnaryFunction fn);

}  // namespace ici
