#include "csf/expr.hpp"

#include "csf/errors.hpp"

#include <cctype>
#include <cmath>
#include <charconv>
#include <sstream>

namespace csf {

namespace {

ExprPtr make(Expr::Kind k) {
    auto e = std::make_unique<Expr>();
    e->kind = k;
    return e;
}

ExprPtr make_binary(Expr::Kind k, ExprPtr lhs, ExprPtr rhs) {
    auto e = make(k);
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    return e;
}

struct Parser {
    const std::string& src;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
            ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& expected) {
        throw SyntaxError(pos, expected);
    }

    // expr := term (('+'|'-') term)*
    ExprPtr expr() {
        ExprPtr e = term();
        for (;;) {
            if (eat('+')) e = make_binary(Expr::Kind::Add, std::move(e), term());
            else if (eat('-')) e = make_binary(Expr::Kind::Sub, std::move(e), term());
            else return e;
        }
    }

    // term := unary (('*'|'/') unary)*
    ExprPtr term() {
        ExprPtr e = unary();
        for (;;) {
            if (eat('*')) e = make_binary(Expr::Kind::Mul, std::move(e), unary());
            else if (eat('/')) e = make_binary(Expr::Kind::Div, std::move(e), unary());
            else return e;
        }
    }

    // unary := '-' unary | power
    ExprPtr unary() {
        if (eat('-')) {
            auto e = make(Expr::Kind::Neg);
            e->lhs = unary();
            return e;
        }
        return power();
    }

    // power := primary ('^' unary)?   (right-associative, binds above unary -)
    ExprPtr power() {
        ExprPtr base = primary();
        if (eat('^'))
            return make_binary(Expr::Kind::Pow, std::move(base), unary());
        return base;
    }

    ExprPtr primary() {
        skip_ws();
        if (pos >= src.size()) fail("a number, name or '('");
        const char c = src[pos];
        if (c == '(') {
            ++pos;
            ExprPtr e = expr();
            if (!eat(')')) fail("')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return name();
        fail("a number, name or '('");
    }

    ExprPtr number() {
        double v = 0.0;
        const char* begin = src.data() + pos;
        const char* end = src.data() + src.size();
        auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc{}) fail("a number");
        pos += static_cast<std::size_t>(ptr - begin);
        auto e = make(Expr::Kind::Number);
        e->value = v;
        return e;
    }

    ExprPtr name() {
        const std::size_t start = pos;
        while (pos < src.size() &&
               std::isalpha(static_cast<unsigned char>(src[pos])))
            ++pos;
        const std::string id = src.substr(start, pos - start);
        if (id == "z") return make(Expr::Kind::Var);
        if (id == "pi") return make(Expr::Kind::Pi);
        if (id == "e") return make(Expr::Kind::E);
        if (id == "sin" || id == "cos" || id == "exp" || id == "sqrt") {
            if (!eat('(')) fail("'(' after function name");
            auto e = make(Expr::Kind::Call);
            e->func = id;
            e->lhs = expr();
            if (!eat(')')) fail("')'");
            return e;
        }
        pos = start;
        fail("one of z, pi, e, sin, cos, exp, sqrt");
    }
};

} // namespace

ExprPtr parse_expr(const std::string& src) {
    Parser p{src};
    ExprPtr e = p.expr();
    p.skip_ws();
    if (p.pos != src.size()) p.fail("end of input");
    return e;
}

double eval(const Expr& e, double z) {
    switch (e.kind) {
    case Expr::Kind::Number: return e.value;
    case Expr::Kind::Var: return z;
    case Expr::Kind::Pi: return 2.0 * std::asin(1.0);
    case Expr::Kind::E: return std::exp(1.0);
    case Expr::Kind::Neg: return -eval(*e.lhs, z);
    case Expr::Kind::Add: return eval(*e.lhs, z) + eval(*e.rhs, z);
    case Expr::Kind::Sub: return eval(*e.lhs, z) - eval(*e.rhs, z);
    case Expr::Kind::Mul: return eval(*e.lhs, z) * eval(*e.rhs, z);
    case Expr::Kind::Div: return eval(*e.lhs, z) / eval(*e.rhs, z);
    case Expr::Kind::Pow: return std::pow(eval(*e.lhs, z), eval(*e.rhs, z));
    case Expr::Kind::Call: {
        const double v = eval(*e.lhs, z);
        if (e.func == "sin") return std::sin(v);
        if (e.func == "cos") return std::cos(v);
        if (e.func == "exp") return std::exp(v);
        return std::sqrt(v);
    }
    }
    return 0.0;
}

std::string to_string(const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::Number: {
        std::ostringstream os;
        os.precision(17);
        os << e.value;
        return os.str();
    }
    case Expr::Kind::Var: return "z";
    case Expr::Kind::Pi: return "pi";
    case Expr::Kind::E: return "e";
    case Expr::Kind::Neg: return "(-" + to_string(*e.lhs) + ")";
    case Expr::Kind::Add:
        return "(" + to_string(*e.lhs) + "+" + to_string(*e.rhs) + ")";
    case Expr::Kind::Sub:
        return "(" + to_string(*e.lhs) + "-" + to_string(*e.rhs) + ")";
    case Expr::Kind::Mul:
        return "(" + to_string(*e.lhs) + "*" + to_string(*e.rhs) + ")";
    case Expr::Kind::Div:
        return "(" + to_string(*e.lhs) + "/" + to_string(*e.rhs) + ")";
    case Expr::Kind::Pow:
        return "(" + to_string(*e.lhs) + "^" + to_string(*e.rhs) + ")";
    case Expr::Kind::Call:
        return e.func + "(" + to_string(*e.lhs) + ")";
    }
    return "";
}

bool equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case Expr::Kind::Number: return a.value == b.value;
    case Expr::Kind::Var:
    case Expr::Kind::Pi:
    case Expr::Kind::E: return true;
    case Expr::Kind::Neg: return equal(*a.lhs, *b.lhs);
    case Expr::Kind::Call:
        return a.func == b.func && equal(*a.lhs, *b.lhs);
    default: return equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
    }
}

} // namespace csf
