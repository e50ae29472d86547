#pragma once

#include <memory>
#include <string>

namespace csf {

/// Arithmetic expression over the spatial variable z: literals, pi, e,
/// unary minus, + - * / ^ (right-associative ^), and sin/cos/exp/sqrt.
struct Expr {
    enum class Kind { Number, Var, Pi, E, Neg, Add, Sub, Mul, Div, Pow, Call };

    Kind kind;
    double value = 0.0;            ///< Number
    std::string func;              ///< Call
    std::unique_ptr<Expr> lhs, rhs;
};

using ExprPtr = std::unique_ptr<Expr>;

/// Recursive-descent parse with byte-offset error reporting.
/// Throws SyntaxError.
ExprPtr parse_expr(const std::string& src);

double eval(const Expr& e, double z);

/// Fully parenthesized rendering; parse(to_string(e)) reproduces e.
std::string to_string(const Expr& e);

bool equal(const Expr& a, const Expr& b);

} // namespace csf
