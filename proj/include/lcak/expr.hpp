#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lcak {

enum class ExprOp {
  number,
  coordinate,
  negate,
  add,
  subtract,
  multiply,
  divide,
  power,
  exp,
  ln,
  sin,
  cos,
  sqrt,
  abs,
};

struct ExprNode {
  ExprOp op = ExprOp::number;
  double value = 0.0;  // number
  int index = -1;      // coordinate
  std::string name;    // coordinate
  std::shared_ptr<const ExprNode> lhs;
  std::shared_ptr<const ExprNode> rhs;
};

/// Immutable closed-form scalar expression of chart coordinates.
///
/// Coordinates are positional: evaluation takes the coordinate vector and the
/// tree refers to slots by index. Names are kept only for printing.
class Expr {
 public:
  Expr();  // the constant 0

  static Expr constant(double v);
  static Expr coordinate(int index, std::string name);

  double eval(std::span<const double> coords) const;

  /// Minimal-parenthesis rendering; parse(to_string()) reproduces the tree.
  std::string to_string() const;
  /// Fully bracketed prefix form, e.g. "(/ 1 (^ x2 2))".
  std::string to_sexpr() const;

  bool depends_on_coordinates() const;
  bool is_zero_constant() const;
  const ExprNode& root() const { return *root_; }

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr exp(const Expr& a);

 private:
  explicit Expr(std::shared_ptr<const ExprNode> root) : root_(std::move(root)) {}
  friend class Parser;

  std::shared_ptr<const ExprNode> root_;
};

/// Parses `source` against the declared coordinate names (slot i <-> coords[i]).
///
/// Precedence, loosest first: + - (left), * / (left), unary -, ^ (right).
/// The exponent of ^ must not depend on coordinates.
Expr parse_expr(std::string_view source, std::span<const std::string> coords);

}  // namespace lcak
