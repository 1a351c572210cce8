#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace ndsl {

/// Immutable arithmetic expression in one variable `x`.
///
/// Grammar (lowest to highest precedence):
///
///     expr    := term (('+' | '-') term)*
///     term    := unary (('*' | '/') unary)*
///     unary   := ('-' | '+') unary | power
///     power   := primary ('^' unary)?          right-associative
///     primary := number | 'pi' | 'x' | func '(' expr ')' | '(' expr ')'
///     func    := sin | cos | exp | sqrt | abs
///
/// An expression without any `x` node is constant and carries its folded value.
class Expression {
 public:
  enum class Kind { Number, Pi, Variable, Negate, Add, Subtract, Multiply, Divide, Power, Function };
  enum class Function { Sin, Cos, Exp, Sqrt, Abs };

  /// Throws ParseError (with byte offset) on malformed input or unknown identifiers.
  static Expression parse(std::string_view text);

  static Expression number(double value);
  static Expression variable();

  /// Evaluates at `x`. Throws DomainError for sqrt of a negative, division by zero
  /// or a non-finite result.
  double operator()(double x) const;

  bool is_constant() const noexcept;
  /// Folded value when constant.
  std::optional<double> constant_value() const noexcept;

  /// Fully parenthesized text that parses back to an identical tree.
  std::string to_string() const;

  Kind kind() const noexcept;

  friend Expression operator+(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a, const Expression& b);
  friend Expression operator*(const Expression& a, const Expression& b);
  friend Expression operator/(const Expression& a, const Expression& b);
  Expression operator-() const;

  /// Structural equality of the syntax trees.
  friend bool operator==(const Expression& a, const Expression& b);

  struct Node;

 private:
  explicit Expression(std::shared_ptr<const Node> root);
  std::shared_ptr<const Node> root_;
};

}  // namespace ndsl
