#include "pmin/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

namespace pmin {

ExprPtr make_number(double v) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Number;
    e->number = v;
    return e;
}

ExprPtr make_var() {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Var;
    return e;
}

ExprPtr make_unary(Expr::Kind k, ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->a = std::move(a);
    return e;
}

ExprPtr make_binary(Expr::Kind k, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->a = std::move(a);
    e->b = std::move(b);
    return e;
}

namespace {

bool is_number(const ExprPtr& e, double v) {
    return e->kind == Expr::Kind::Number && e->number == v;
}

// Folding constructors used by the differentiator to keep derivative trees
// small without doing general CAS rewriting.
ExprPtr fadd(ExprPtr a, ExprPtr b) {
    if (is_number(a, 0.0)) return b;
    if (is_number(b, 0.0)) return a;
    if (a->kind == Expr::Kind::Number && b->kind == Expr::Kind::Number)
        return make_number(a->number + b->number);
    return make_binary(Expr::Kind::Add, std::move(a), std::move(b));
}

ExprPtr fsub(ExprPtr a, ExprPtr b) {
    if (is_number(b, 0.0)) return a;
    if (a->kind == Expr::Kind::Number && b->kind == Expr::Kind::Number)
        return make_number(a->number - b->number);
    if (is_number(a, 0.0)) return make_unary(Expr::Kind::Neg, std::move(b));
    return make_binary(Expr::Kind::Sub, std::move(a), std::move(b));
}

ExprPtr fmul(ExprPtr a, ExprPtr b) {
    if (is_number(a, 0.0) || is_number(b, 0.0)) return make_number(0.0);
    if (is_number(a, 1.0)) return b;
    if (is_number(b, 1.0)) return a;
    if (a->kind == Expr::Kind::Number && b->kind == Expr::Kind::Number)
        return make_number(a->number * b->number);
    return make_binary(Expr::Kind::Mul, std::move(a), std::move(b));
}

ExprPtr fdiv(ExprPtr a, ExprPtr b) {
    if (is_number(a, 0.0)) return make_number(0.0);
    if (is_number(b, 1.0)) return a;
    return make_binary(Expr::Kind::Div, std::move(a), std::move(b));
}

ExprPtr fneg(ExprPtr a) {
    if (a->kind == Expr::Kind::Number) return make_number(-a->number);
    if (a->kind == Expr::Kind::Neg) return a->a;
    return make_unary(Expr::Kind::Neg, std::move(a));
}

class Parser {
public:
    explicit Parser(const std::string& src) : src_(src) {}

    ExprPtr run() {
        ExprPtr e = expr();
        skip_ws();
        if (pos_ != src_.size())
            throw SyntaxError(pos_, "unexpected trailing input");
        return e;
    }

private:
    const std::string& src_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c))
            throw SyntaxError(pos_, std::string("expected '") + c + "'");
    }

    ExprPtr expr() {
        ExprPtr e = term();
        for (;;) {
            if (accept('+'))
                e = make_binary(Expr::Kind::Add, e, term());
            else if (accept('-'))
                e = make_binary(Expr::Kind::Sub, e, term());
            else
                return e;
        }
    }

    ExprPtr term() {
        ExprPtr e = factor();
        for (;;) {
            if (accept('*'))
                e = make_binary(Expr::Kind::Mul, e, factor());
            else if (accept('/'))
                e = make_binary(Expr::Kind::Div, e, factor());
            else
                return e;
        }
    }

    ExprPtr factor() {
        if (accept('-')) return make_unary(Expr::Kind::Neg, power());
        return power();
    }

    // '^' binds tighter than unary minus and is right-associative.
    ExprPtr power() {
        ExprPtr base = primary();
        if (accept('^')) return make_binary(Expr::Kind::Pow, base, factor());
        return base;
    }

    ExprPtr primary() {
        skip_ws();
        if (pos_ >= src_.size()) throw SyntaxError(pos_, "unexpected end of input");
        char c = src_[pos_];

        if (c == '(') {
            ++pos_;
            ExprPtr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return name();
        throw SyntaxError(pos_, std::string("unexpected character '") + c + "'");
    }

    ExprPtr number() {
        const char* begin = src_.c_str() + pos_;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) throw SyntaxError(pos_, "malformed number");
        pos_ += static_cast<std::size_t>(end - begin);
        return make_number(v);
    }

    ExprPtr name() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        std::string id = src_.substr(start, pos_ - start);

        if (id == "t") return make_var();
        if (id == "pi") return make_number(std::numbers::pi);

        Expr::Kind k;
        if (id == "sin") k = Expr::Kind::Sin;
        else if (id == "cos") k = Expr::Kind::Cos;
        else if (id == "tan") k = Expr::Kind::Tan;
        else if (id == "atan") k = Expr::Kind::Atan;
        else if (id == "acot") k = Expr::Kind::Acot;
        else if (id == "sqrt") k = Expr::Kind::Sqrt;
        else if (id == "exp") k = Expr::Kind::Exp;
        else if (id == "log") k = Expr::Kind::Log;
        else throw SyntaxError(start, "unknown identifier '" + id + "'");

        expect('(');
        ExprPtr arg = expr();
        expect(')');
        return make_unary(k, arg);
    }
};

[[noreturn]] void domain_fail(double t, const char* what) {
    throw DomainError(t, what);
}

}  // namespace

ExprPtr parse_expression_tree(const std::string& src) {
    return Parser(src).run();
}

double eval_expression(const Expr& e, double t) {
    using K = Expr::Kind;
    switch (e.kind) {
        case K::Number: return e.number;
        case K::Var: return t;
        case K::Add: return eval_expression(*e.a, t) + eval_expression(*e.b, t);
        case K::Sub: return eval_expression(*e.a, t) - eval_expression(*e.b, t);
        case K::Mul: return eval_expression(*e.a, t) * eval_expression(*e.b, t);
        case K::Div: {
            double num = eval_expression(*e.a, t);
            double den = eval_expression(*e.b, t);
            if (den == 0.0) domain_fail(t, "division by zero");
            return num / den;
        }
        case K::Pow: {
            double base = eval_expression(*e.a, t);
            double exponent = eval_expression(*e.b, t);
            double r = std::pow(base, exponent);
            if (!std::isfinite(r)) domain_fail(t, "pow undefined");
            return r;
        }
        case K::Neg: return -eval_expression(*e.a, t);
        case K::Sin: return std::sin(eval_expression(*e.a, t));
        case K::Cos: return std::cos(eval_expression(*e.a, t));
        case K::Tan: {
            double r = std::tan(eval_expression(*e.a, t));
            if (!std::isfinite(r)) domain_fail(t, "tan pole");
            return r;
        }
        case K::Atan: return std::atan(eval_expression(*e.a, t));
        case K::Acot:
            // Continuous decreasing branch with range (0, pi).
            return std::numbers::pi / 2 - std::atan(eval_expression(*e.a, t));
        case K::Sqrt: {
            double v = eval_expression(*e.a, t);
            if (v < 0.0) domain_fail(t, "sqrt of negative value");
            return std::sqrt(v);
        }
        case K::Exp: {
            double r = std::exp(eval_expression(*e.a, t));
            if (!std::isfinite(r)) domain_fail(t, "exp overflow");
            return r;
        }
        case K::Log: {
            double v = eval_expression(*e.a, t);
            if (v <= 0.0) domain_fail(t, "log of non-positive value");
            return std::log(v);
        }
    }
    domain_fail(t, "corrupt expression node");
}

ExprPtr differentiate(const ExprPtr& e) {
    using K = Expr::Kind;
    switch (e->kind) {
        case K::Number: return make_number(0.0);
        case K::Var: return make_number(1.0);
        case K::Add: return fadd(differentiate(e->a), differentiate(e->b));
        case K::Sub: return fsub(differentiate(e->a), differentiate(e->b));
        case K::Mul:
            return fadd(fmul(differentiate(e->a), e->b), fmul(e->a, differentiate(e->b)));
        case K::Div:
            // (a'b - ab') / b^2
            return fdiv(fsub(fmul(differentiate(e->a), e->b), fmul(e->a, differentiate(e->b))),
                        fmul(e->b, e->b));
        case K::Pow: {
            if (e->b->kind == K::Number) {
                // c * a^(c-1) * a'
                double c = e->b->number;
                return fmul(fmul(make_number(c),
                                 make_binary(K::Pow, e->a, make_number(c - 1.0))),
                            differentiate(e->a));
            }
            // a^b * (b' log a + b a'/a)
            return fmul(make_binary(K::Pow, e->a, e->b),
                        fadd(fmul(differentiate(e->b), make_unary(K::Log, e->a)),
                             fdiv(fmul(e->b, differentiate(e->a)), e->a)));
        }
        case K::Neg: return fneg(differentiate(e->a));
        case K::Sin: return fmul(make_unary(K::Cos, e->a), differentiate(e->a));
        case K::Cos: return fneg(fmul(make_unary(K::Sin, e->a), differentiate(e->a)));
        case K::Tan: {
            ExprPtr c = make_unary(K::Cos, e->a);
            return fdiv(differentiate(e->a), fmul(c, c));
        }
        case K::Atan:
            return fdiv(differentiate(e->a),
                        fadd(make_number(1.0), fmul(e->a, e->a)));
        case K::Acot:
            return fneg(fdiv(differentiate(e->a),
                             fadd(make_number(1.0), fmul(e->a, e->a))));
        case K::Sqrt:
            return fdiv(differentiate(e->a),
                        fmul(make_number(2.0), make_unary(K::Sqrt, e->a)));
        case K::Exp: return fmul(make_unary(K::Exp, e->a), differentiate(e->a));
        case K::Log: return fdiv(differentiate(e->a), e->a);
    }
    throw Error("corrupt expression node");
}

namespace {

int precedence(Expr::Kind k) {
    using K = Expr::Kind;
    switch (k) {
        case K::Add: case K::Sub: return 1;
        case K::Mul: case K::Div: return 2;
        case K::Neg: return 3;
        case K::Pow: return 4;
        default: return 5;
    }
}

void print_rec(const Expr& e, int parent_prec, std::string& out) {
    using K = Expr::Kind;
    int prec = precedence(e.kind);
    bool parens = prec < parent_prec;
    if (parens) out += '(';
    switch (e.kind) {
        case K::Number: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", e.number);
            if (e.number < 0 && !parens) {
                out += '(';
                out += buf;
                out += ')';
            } else {
                out += buf;
            }
            break;
        }
        case K::Var: out += 't'; break;
        case K::Add: print_rec(*e.a, 1, out); out += '+'; print_rec(*e.b, 2, out); break;
        case K::Sub: print_rec(*e.a, 1, out); out += '-'; print_rec(*e.b, 2, out); break;
        case K::Mul: print_rec(*e.a, 2, out); out += '*'; print_rec(*e.b, 3, out); break;
        case K::Div: print_rec(*e.a, 2, out); out += '/'; print_rec(*e.b, 3, out); break;
        // Exponent is a `factor` in the grammar, so a unary minus there needs
        // no parentheses; the base must be a primary.
        case K::Pow: print_rec(*e.a, 5, out); out += '^'; print_rec(*e.b, 3, out); break;
        case K::Neg: out += '-'; print_rec(*e.a, 4, out); break;
        case K::Sin: out += "sin("; print_rec(*e.a, 0, out); out += ')'; break;
        case K::Cos: out += "cos("; print_rec(*e.a, 0, out); out += ')'; break;
        case K::Tan: out += "tan("; print_rec(*e.a, 0, out); out += ')'; break;
        case K::Atan: out += "atan("; print_rec(*e.a, 0, out); out += ')'; break;
        case K::Acot: out += "acot("; print_rec(*e.a, 0, out); out += ')'; break;
        case K::Sqrt: out += "sqrt("; print_rec(*e.a, 0, out); out += ')'; break;
        case K::Exp: out += "exp("; print_rec(*e.a, 0, out); out += ')'; break;
        case K::Log: out += "log("; print_rec(*e.a, 0, out); out += ')'; break;
    }
    if (parens) out += ')';
}

}  // namespace

std::string print_expression(const Expr& e) {
    std::string out;
    print_rec(e, 0, out);
    return out;
}

}  // namespace pmin
