#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace berwald {

/// Arithmetic expression over u1, u2 and t.
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' unary)?
///   primary := number | name | func '(' expr ')' | '(' expr ')'
///   name    := u1 | u2 | t | pi | e
///   func    := sin | cos | tan | log | exp | sqrt | abs
///
/// '^' binds tighter than unary minus and groups to the right, so -2^2 = -4
/// and 2^3^2 = 512. Parse failures throw ConfigError.
class Expression {
 public:
  struct Node;

  static Expression parse(std::string_view source);

  double operator()(double u1, double u2, double t = 0.0) const;
  /// Value of an expression that mentions none of u1, u2, t.
  double constant() const;

  const std::string& source() const { return source_; }
  bool uses_u1() const { return uses_u1_; }
  bool uses_u2() const { return uses_u2_; }
  bool uses_t() const { return uses_t_; }
  bool uses_point() const { return uses_u1_ || uses_u2_; }

 private:
  Expression() = default;

  std::string source_;
  std::shared_ptr<const Node> root_;
  bool uses_u1_ = false;
  bool uses_u2_ = false;
  bool uses_t_ = false;
};

}  // namespace berwald
