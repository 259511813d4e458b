#include "rdnet/expr.hpp"

#include "expr_parser.hpp"
#include "rdnet/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

namespace rdnet::expr {

std::string Variable::name() const {
    switch (kind) {
    case VarKind::Time: return "t";
    case VarKind::Space: return "x" + std::to_string(index);
    case VarKind::Conc: return "c" + std::to_string(index);
    }
    return "?";
}

Expr Expr::number(double v) {
    Expr e;
    e.op = Op::Number;
    e.value = v;
    return e;
}

Expr Expr::variable(Variable v) {
    Expr e;
    e.op = Op::Var;
    e.var = v;
    return e;
}

Expr Expr::unary(Op op, Expr a) {
    Expr e;
    e.op = op;
    e.args.push_back(std::move(a));
    return e;
}

Expr Expr::binary(Op op, Expr a, Expr b) {
    Expr e;
    e.op = op;
    e.args.push_back(std::move(a));
    e.args.push_back(std::move(b));
    return e;
}

} // namespace rdnet::expr

namespace rdnet::detail {

using expr::Expr;
using expr::Op;
using expr::Variable;
using expr::VarKind;

namespace {

std::optional<Variable> variable_named(const std::string& name) {
    if (name == "t") return Variable{VarKind::Time, 0};
    if (name.size() < 2 || (name[0] != 'x' && name[0] != 'c')) return std::nullopt;
    if (name[1] == '0') return std::nullopt;
    int index = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
        index = index * 10 + (name[i] - '0');
        if (index > 1000000) return std::nullopt;
    }
    if (name[0] == 'x') {
        if (index > 3) return std::nullopt;
        return Variable{VarKind::Space, index};
    }
    return Variable{VarKind::Conc, index};
}

Expr parse_unary(Lexer& lex);

Expr parse_primary(Lexer& lex) {
    const Token tok = lex.peek();
    switch (tok.kind) {
    case Tok::Number: {
        lex.next();
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
        if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size() || !std::isfinite(v))
            Lexer::fail(tok, "numeric literal out of range");
        return Expr::number(v);
    }
    case Tok::LParen: {
        lex.next();
        Expr inner = parse_expr(lex);
        lex.expect(Tok::RParen, "')'");
        return inner;
    }
    case Tok::Ident: {
        lex.next();
        if (tok.text == "exp" || tok.text == "min" || tok.text == "max") {
            lex.expect(Tok::LParen, "'(' after function name");
            Expr a = parse_expr(lex);
            if (tok.text == "exp") {
                lex.expect(Tok::RParen, "')'");
                return Expr::unary(Op::Exp, std::move(a));
            }
            lex.expect(Tok::Comma, "',' between arguments");
            Expr b = parse_expr(lex);
            lex.expect(Tok::RParen, "')'");
            return Expr::binary(tok.text == "min" ? Op::Min : Op::Max, std::move(a), std::move(b));
        }
        if (auto v = variable_named(tok.text)) return Expr::variable(*v);
        Lexer::fail(tok, "unknown identifier");
    }
    default:
        Lexer::fail(tok, "expected number, variable, function or '('");
    }
}

Expr parse_power(Lexer& lex) {
    Expr base = parse_primary(lex);
    if (lex.accept(Tok::Caret)) {
        Expr exponent = parse_unary(lex);  // right-associative
        return Expr::binary(Op::Pow, std::move(base), std::move(exponent));
    }
    return base;
}

Expr parse_unary(Lexer& lex) {
    if (lex.accept(Tok::Minus)) return Expr::unary(Op::Neg, parse_unary(lex));
    return parse_power(lex);
}

Expr parse_term(Lexer& lex) {
    Expr lhs = parse_unary(lex);
    for (;;) {
        if (lex.accept(Tok::Star)) lhs = Expr::binary(Op::Mul, std::move(lhs), parse_unary(lex));
        else if (lex.accept(Tok::Slash)) lhs = Expr::binary(Op::Div, std::move(lhs), parse_unary(lex));
        else return lhs;
    }
}

} // namespace

Expr parse_expr(Lexer& lex) {
    Expr lhs = parse_term(lex);
    for (;;) {
        if (lex.accept(Tok::Plus)) lhs = Expr::binary(Op::Add, std::move(lhs), parse_term(lex));
        else if (lex.accept(Tok::Minus)) lhs = Expr::binary(Op::Sub, std::move(lhs), parse_term(lex));
        else return lhs;
    }
}

} // namespace rdnet::detail

namespace rdnet::expr {

Expr parse_expression(std::string_view text) {
    detail::Lexer lex(text);
    Expr e = detail::parse_expr(lex);
    if (lex.peek().kind != detail::Tok::End) detail::Lexer::fail(lex.peek(), "unexpected trailing input");
    return e;
}

namespace {

double checked(double v, const char* what) {
    if (!std::isfinite(v)) throw DomainError(std::string("non-finite result in ") + what);
    return v;
}

double lookup(const Variable& v, const Env& env) {
    switch (v.kind) {
    case VarKind::Time:
        if (!env.t) throw UnboundVariable("t");
        return *env.t;
    case VarKind::Space: {
        const auto& slot = env.x[static_cast<std::size_t>(v.index - 1)];
        if (!slot) throw UnboundVariable(v.name());
        return *slot;
    }
    case VarKind::Conc:
        if (v.index < 1 || static_cast<std::size_t>(v.index) > env.c.size()) throw UnboundVariable(v.name());
        return env.c[static_cast<std::size_t>(v.index - 1)];
    }
    throw UnboundVariable(v.name());
}

} // namespace

double eval(const Expr& e, const Env& env) {
    switch (e.op) {
    case Op::Number: return e.value;
    case Op::Var: return lookup(e.var, env);
    case Op::Neg: return -eval(e.args[0], env);
    case Op::Add: return checked(eval(e.args[0], env) + eval(e.args[1], env), "addition");
    case Op::Sub: return checked(eval(e.args[0], env) - eval(e.args[1], env), "subtraction");
    case Op::Mul: return checked(eval(e.args[0], env) * eval(e.args[1], env), "multiplication");
    case Op::Div: {
        const double num = eval(e.args[0], env);
        const double den = eval(e.args[1], env);
        if (den == 0.0) throw DomainError("division by zero");
        return checked(num / den, "division");
    }
    case Op::Pow: {
        const double base = eval(e.args[0], env);
        const double p = eval(e.args[1], env);
        const bool integral = std::floor(p) == p;
        if (base < 0.0 && !integral) throw DomainError("fractional power of a negative base");
        if (base == 0.0 && p < 0.0) throw DomainError("division by zero (negative power of 0)");
        return checked(std::pow(base, p), "power");
    }
    case Op::Min: return std::min(eval(e.args[0], env), eval(e.args[1], env));
    case Op::Max: return std::max(eval(e.args[0], env), eval(e.args[1], env));
    case Op::Exp: return checked(std::exp(eval(e.args[0], env)), "exp");
    }
    throw DomainError("unknown operator");
}

namespace {

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, ptr);
    return s;
}

const char* infix(Op op) {
    switch (op) {
    case Op::Add: return " + ";
    case Op::Sub: return " - ";
    case Op::Mul: return " * ";
    case Op::Div: return " / ";
    case Op::Pow: return "^";
    default: return "?";
    }
}

} // namespace

std::string to_string(const Expr& e) {
    switch (e.op) {
    case Op::Number:
        // Negative literals only come from substitution; keep them reparsable.
        return e.value < 0 ? "(-" + format_number(-e.value) + ")" : format_number(e.value);
    case Op::Var: return e.var.name();
    case Op::Neg: return "(-" + to_string(e.args[0]) + ")";
    case Op::Exp: return "exp(" + to_string(e.args[0]) + ")";
    case Op::Min: return "min(" + to_string(e.args[0]) + ", " + to_string(e.args[1]) + ")";
    case Op::Max: return "max(" + to_string(e.args[0]) + ", " + to_string(e.args[1]) + ")";
    default: return "(" + to_string(e.args[0]) + infix(e.op) + to_string(e.args[1]) + ")";
    }
}

std::set<Variable> variables(const Expr& e) {
    std::set<Variable> out;
    std::function<void(const Expr&)> walk = [&](const Expr& n) {
        if (n.op == Op::Var) out.insert(n.var);
        for (const auto& a : n.args) walk(a);
    };
    walk(e);
    return out;
}

namespace {

using Poly = std::vector<double>;

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

Poly poly_add(Poly a, const Poly& b, double sign) {
    if (a.size() < b.size()) a.resize(b.size(), 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += sign * b[i];
    return a;
}

bool is_constant(const Poly& p) {
    for (std::size_t i = 1; i < p.size(); ++i)
        if (p[i] != 0.0) return false;
    return true;
}

} // namespace

std::optional<std::vector<double>> as_polynomial(const Expr& e, Variable v) {
    auto rec = [&](auto&& self, const Expr& n) -> std::optional<Poly> {
        switch (n.op) {
        case Op::Number: return Poly{n.value};
        case Op::Var:
            if (n.var == v) return Poly{0.0, 1.0};
            return std::nullopt;
        case Op::Neg: {
            auto a = self(self, n.args[0]);
            if (!a) return std::nullopt;
            for (auto& c : *a) c = -c;
            return a;
        }
        case Op::Add:
        case Op::Sub: {
            auto a = self(self, n.args[0]);
            auto b = self(self, n.args[1]);
            if (!a || !b) return std::nullopt;
            return poly_add(*a, *b, n.op == Op::Add ? 1.0 : -1.0);
        }
        case Op::Mul: {
            auto a = self(self, n.args[0]);
            auto b = self(self, n.args[1]);
            if (!a || !b) return std::nullopt;
            return poly_mul(*a, *b);
        }
        case Op::Div: {
            auto a = self(self, n.args[0]);
            auto b = self(self, n.args[1]);
            if (!a || !b || !is_constant(*b) || (*b)[0] == 0.0) return std::nullopt;
            for (auto& c : *a) c /= (*b)[0];
            return a;
        }
        case Op::Pow: {
            auto a = self(self, n.args[0]);
            auto b = self(self, n.args[1]);
            if (!a || !b || !is_constant(*b)) return std::nullopt;
            const double p = (*b)[0];
            if (p < 0.0 || p > 64.0 || std::floor(p) != p) {
                if (is_constant(*a) && (*a)[0] >= 0.0) return Poly{std::pow((*a)[0], p)};
                return std::nullopt;
            }
            Poly out{1.0};
            for (int i = 0; i < static_cast<int>(p); ++i) out = poly_mul(out, *a);
            return out;
        }
        case Op::Exp:
        case Op::Min:
        case Op::Max: {
            std::vector<double> vals;
            for (const auto& arg : n.args) {
                auto a = self(self, arg);
                if (!a || !is_constant(*a)) return std::nullopt;
                vals.push_back((*a)[0]);
            }
            if (n.op == Op::Exp) return Poly{std::exp(vals[0])};
            return Poly{n.op == Op::Min ? std::min(vals[0], vals[1]) : std::max(vals[0], vals[1])};
        }
        }
        return std::nullopt;
    };
    auto p = rec(rec, e);
    if (p) {
        while (p->size() > 1 && p->back() == 0.0) p->pop_back();
    }
    return p;
}

Expr substitute(const Expr& e, const std::function<Expr(Variable)>& fn) {
    if (e.op == Op::Var) return fn(e.var);
    Expr out = e;
    for (auto& a : out.args) a = substitute(a, fn);
    return out;
}

} // namespace rdnet::expr
