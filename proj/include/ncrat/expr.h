#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ncrat/rational.h"

namespace ncrat {

/// Expression tree over the free semicircular generators s_1, ..., s_d:
/// rational constants, generators, +, -, * and inverse. Invertibility is not
/// checked at construction; evaluation reports NotInvertible.
class RationalExpr {
 public:
  enum class Kind { kConstant, kGenerator, kSum, kProduct, kNegation, kInverse };

  static RationalExpr constant(const Rational& value);
  static RationalExpr generator(int letter);

  /// Defaults to the constant 0.
  RationalExpr();

  Kind kind() const { return node_->kind; }
  const Rational& value() const { return node_->value; }
  int letter() const { return node_->letter; }
  const std::vector<RationalExpr>& children() const { return node_->children; }

  RationalExpr inverse() const;

  friend RationalExpr operator+(const RationalExpr& a, const RationalExpr& b);
  friend RationalExpr operator-(const RationalExpr& a, const RationalExpr& b);
  friend RationalExpr operator*(const RationalExpr& a, const RationalExpr& b);
  friend RationalExpr operator-(const RationalExpr& a);

  bool has_inverse() const;

  /// Polynomial degree. Throws InvalidArgument when an Inverse is present.
  int degree() const;

  /// Largest generator index, 0 when there is none.
  int max_letter() const;

  /// Fully parenthesized text that parse_expr reads back.
  std::string to_string() const;

 private:
  struct Node {
    Kind kind = Kind::kConstant;
    Rational value;
    int letter = 0;
    std::vector<RationalExpr> children;
  };

  explicit RationalExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static RationalExpr make(Kind kind, std::vector<RationalExpr> children);

  std::shared_ptr<const Node> node_;
};

/// Grammar (whitespace-insensitive):
///   expr    := term (('+' | '-') term)*
///   term    := unary ('*' unary)*
///   unary   := '-' unary | postfix
///   postfix := primary ('^-1')*
///   primary := rational | 's' digit | '(' expr ')'
/// Rationals are integers, a/b or decimals. Throws Error(kParse).
RationalExpr parse_expr(std::string_view text);

}  // namespace ncrat
