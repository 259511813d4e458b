#pragma once

#include <array>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rdnet::expr {

enum class Op { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Min, Max, Exp };

enum class VarKind { Time, Space, Conc };

/// t, x1..x3 or c1..cP. Indices are 1-based; time uses index 0.
struct Variable {
    VarKind kind = VarKind::Time;
    int index = 0;

    bool operator==(const Variable&) const = default;
    auto operator<=>(const Variable&) const = default;

    std::string name() const;
};

/// Expression tree with value semantics. Equality is structural.
struct Expr {
    Op op = Op::Number;
    double value = 0.0;
    Variable var{};
    std::vector<Expr> args;

    bool operator==(const Expr&) const = default;

    static Expr number(double v);
    static Expr variable(Variable v);
    static Expr unary(Op op, Expr a);
    static Expr binary(Op op, Expr a, Expr b);
};

/// Variable bindings for evaluation. Unset entries are unbound.
struct Env {
    std::optional<double> t;
    std::array<std::optional<double>, 3> x{};
    std::span<const double> c;
};

Expr parse_expression(std::string_view text);

/// Throws DomainError (fractional power of a negative base, division by zero,
/// non-finite result) or UnboundVariable.
double eval(const Expr& e, const Env& env);

/// Fully parenthesized rendering that reparses to a structurally equal tree.
std::string to_string(const Expr& e);

std::set<Variable> variables(const Expr& e);

/// Coefficients (lowest degree first) when `e` is a polynomial in `v` alone
/// with nonnegative integer powers; nullopt otherwise.
std::optional<std::vector<double>> as_polynomial(const Expr& e, Variable v);

/// Replaces every variable leaf by `fn(var)`.
Expr substitute(const Expr& e, const std::function<Expr(Variable)>& fn);

} // namespace rdnet::expr
