#pragma once

#include <memory>
#include <string>

#include "pmin/errors.hpp"

namespace pmin {

/// Node of an immutable scalar expression tree in one variable `t`.
///
/// Supported grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-'? power
///   power  := primary ('^' factor)?
///   primary:= number | 't' | 'pi' | func '(' expr ')' | '(' expr ')'
///   func   := sin|cos|tan|atan|acot|sqrt|exp|log
///
/// `acot` is the continuous branch with range (0, pi). `pi` is folded to a
/// numeric literal at parse time.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind {
        Number, Var,
        Add, Sub, Mul, Div, Pow, Neg,
        Sin, Cos, Tan, Atan, Acot, Sqrt, Exp, Log
    };

    Kind kind;
    double number = 0.0;  // Kind::Number only
    ExprPtr a, b;         // operands (b for binary kinds only)
};

ExprPtr make_number(double v);
ExprPtr make_var();
ExprPtr make_unary(Expr::Kind k, ExprPtr a);
ExprPtr make_binary(Expr::Kind k, ExprPtr a, ExprPtr b);

/// Parse `src` against the grammar above. Throws SyntaxError with the
/// offending character position. Domain problems (sqrt of a negative, ...)
/// are not detected here; they surface as DomainError at evaluation time.
ExprPtr parse_expression_tree(const std::string& src);

/// Evaluate at t. Throws DomainError if any subexpression is undefined or
/// the result is not finite.
double eval_expression(const Expr& e, double t);

/// Exact symbolic derivative with light constant folding (no general
/// simplification). The result is independent of t and reusable.
ExprPtr differentiate(const ExprPtr& e);

/// Render with minimal parentheses; parse_expression_tree(print) evaluates
/// identically to the original tree.
std::string print_expression(const Expr& e);

}  // namespace pmin
