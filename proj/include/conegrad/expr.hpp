#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "conegrad/error.hpp"

namespace conegrad {

enum class ExprKind { Constant, Variable, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp, Log, Sqrt };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression tree node. Binary nodes use lhs/rhs, unary nodes
/// (Neg and the functions) use lhs only.
struct Expr {
  ExprKind kind;
  double value = 0.0;      // Constant
  std::size_t index = 0;   // Variable
  ExprPtr lhs;
  ExprPtr rhs;
};

// Node builders. These apply local folding (constant arithmetic, x+0, x*1,
// 0*x, x^1, x^0, --x) and are what differentiate() uses.
ExprPtr constant(double v);
ExprPtr variable(std::size_t index);
ExprPtr add(ExprPtr a, ExprPtr b);
ExprPtr sub(ExprPtr a, ExprPtr b);
ExprPtr mul(ExprPtr a, ExprPtr b);
ExprPtr div(ExprPtr a, ExprPtr b);
ExprPtr pow(ExprPtr base, ExprPtr exponent);
ExprPtr neg(ExprPtr a);
ExprPtr apply(ExprKind function, ExprPtr arg);

bool is_constant(const ExprPtr& e, double v);

/// Parses `text` against an ordered variable list. Grammar:
///
///   expr  := term (('+' | '-') term)*
///   term  := unary (('*' | '/') unary)*
///   unary := '-' unary | power
///   power := atom ('^' unary)?
///   atom  := number | ident | ident '(' expr ')' | '(' expr ')'
///
/// so '^' binds tighter than unary minus (-t^2 == -(t^2)) and is
/// right-associative. Functions: sin cos exp log sqrt.
ExprPtr parse_expr(std::string_view text, const std::vector<std::string>& variables);

/// Symbolic partial derivative with local simplification.
ExprPtr differentiate(const ExprPtr& e, std::size_t var_index);

/// Throws EvalDomainError for log/sqrt/division/pow outside their domain.
double evaluate(const Expr& e, std::span<const double> x);

/// Fully parenthesized text that parses back to an equivalent tree; constants
/// printed with 17 significant digits.
std::string to_string(const Expr& e, const std::vector<std::string>& variables);

/// Largest variable index referenced plus one (0 for constant trees).
std::size_t arity(const Expr& e);

}  // namespace conegrad
