#pragma once

// Scalar expression language used to describe surfaces r(u, v) and curves
// (u(t), v(t)).
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?          right-associative
//   primary := number | name | func '(' expr ')' | '(' expr ')'
//
// Functions: sin cos tan exp ln (alias log) sqrt abs. Constants: pi, e.
// A unary minus applied directly to a numeric literal folds into a negative
// constant, so printing and re-parsing is structurally lossless.

#include <cmath>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "darboux/errors.hpp"
#include "darboux/jet.hpp"

namespace darboux {

enum class Op {
    Const, Var,
    Neg, Sin, Cos, Tan, Exp, Ln, Sqrt, Abs,
    Add, Sub, Mul, Div, Pow,
};

bool is_unary(Op op);
bool is_binary(Op op);
std::string_view op_name(Op op);

class Expr {
public:
    /// The constant 0.
    Expr();

    static Expr constant(double v);
    static Expr variable(std::string name);
    static Expr unary(Op op, Expr arg);
    static Expr binary(Op op, Expr lhs, Expr rhs);

    Op op() const { return node_->op; }
    double value() const { return node_->value; }
    const std::string& name() const { return node_->name; }
    std::span<const Expr> children() const { return node_->children; }
    const Expr& arg(std::size_t i) const { return node_->children[i]; }

    bool is_constant() const { return op() == Op::Const; }
    bool is_constant(double v) const { return op() == Op::Const && value() == v; }

private:
    struct Node {
        Op op = Op::Const;
        double value = 0.0;
        std::string name;
        std::vector<Expr> children;
    };
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    std::shared_ptr<const Node> node_;
};

/// Structural equality: same operators, same constants (bitwise), same names.
bool structurally_equal(const Expr& a, const Expr& b);
inline bool operator==(const Expr& a, const Expr& b) { return structurally_equal(a, b); }

std::size_t node_count(const Expr& e);
std::set<std::string> free_variables(const Expr& e);

Expr parse(std::string_view source, const std::set<std::string>& allowed_vars);

/// Fully parenthesized rendering that `parse` maps back to the same tree.
std::string to_string(const Expr& e);

// Builders with light simplification (constant folding, 0/1 identities).
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& a, const Expr& b);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr tan(const Expr& a);
Expr exp(const Expr& a);
Expr ln(const Expr& a);
Expr sqrt(const Expr& a);
Expr abs(const Expr& a);

/// order-th partial derivative with respect to `var`.
Expr differentiate(const Expr& e, std::string_view var, int order = 1);

double evaluate(const Expr& e, const std::map<std::string, double>& bindings);

// ---------------------------------------------------------------------------
// Generic evaluation over double or Jet<N>. Domain checks look at the value
// (zeroth coefficient) only.

template <typename T>
using Binding = std::pair<std::string_view, T>;

namespace detail {

inline double value_of(double x) { return x; }
template <std::size_t N>
double value_of(const Jet<N>& x) { return x.value(); }

inline double apply_pow(double a, double p, bool /*integral*/) { return std::pow(a, p); }
template <std::size_t N>
Jet<N> apply_pow(const Jet<N>& a, double p, bool integral) {
    return integral ? pow_int(a, static_cast<long>(p)) : pow(a, p);
}

inline double apply_pow_general(double a, double b) { return std::pow(a, b); }
template <std::size_t N>
Jet<N> apply_pow_general(const Jet<N>& a, const Jet<N>& b) { return exp(b * log(a)); }

[[noreturn]] void throw_domain(std::string_view what, double x);
[[noreturn]] void throw_unbound(std::string_view name);

}  // namespace detail

template <typename T>
T evaluate_with(const Expr& e, std::span<const Binding<T>> bindings) {
    using detail::value_of;
    switch (e.op()) {
    case Op::Const:
        return T(e.value());
    case Op::Var:
        for (const auto& [name, v] : bindings)
            if (name == e.name()) return v;
        detail::throw_unbound(e.name());
    default:
        break;
    }
    if (is_unary(e.op())) {
        const T a = evaluate_with<T>(e.arg(0), bindings);
        const double av = value_of(a);
        using std::sin, std::cos, std::tan, std::exp, std::log, std::sqrt, std::abs;
        switch (e.op()) {
        case Op::Neg: return -a;
        case Op::Sin: return sin(a);
        case Op::Cos: return cos(a);
        case Op::Tan:
            if (std::cos(av) == 0.0) detail::throw_domain("tan at odd multiple of pi/2", av);
            return tan(a);
        case Op::Exp: return exp(a);
        case Op::Ln:
            if (!(av > 0.0)) detail::throw_domain("ln of non-positive value", av);
            return log(a);
        case Op::Sqrt:
            if (av < 0.0) detail::throw_domain("sqrt of negative value", av);
            return sqrt(a);
        case Op::Abs: return abs(a);
        default: break;
        }
    }
    const T a = evaluate_with<T>(e.arg(0), bindings);
    switch (e.op()) {
    case Op::Pow:
        if (e.arg(1).is_constant()) {
            const double p = e.arg(1).value();
            const bool integral = std::floor(p) == p && std::abs(p) < 1e9;
            const double av = value_of(a);
            if (!integral && av < 0.0) detail::throw_domain("negative base with non-integer exponent", av);
            if (av == 0.0 && p < 0.0) detail::throw_domain("zero base with negative exponent", av);
            if (!integral && av == 0.0 && !std::is_same_v<T, double>)
                detail::throw_domain("non-integer power is not smooth at zero", av);
            return detail::apply_pow(a, p, integral);
        } else {
            const T b = evaluate_with<T>(e.arg(1), bindings);
            const double av = value_of(a);
            if (!(av > 0.0)) detail::throw_domain("variable exponent needs a positive base", av);
            return detail::apply_pow_general(a, b);
        }
    default:
        break;
    }
    const T b = evaluate_with<T>(e.arg(1), bindings);
    switch (e.op()) {
    case Op::Add: return a + b;
    case Op::Sub: return a - b;
    case Op::Mul: return a * b;
    case Op::Div:
        if (value_of(b) == 0.0) detail::throw_domain("division by zero", 0.0);
        return a / b;
    default:
        break;
    }
    detail::throw_domain("malformed expression", 0.0);
}

template <typename T>
T evaluate_with(const Expr& e, std::initializer_list<Binding<T>> bindings) {
    return evaluate_with<T>(e, std::span<const Binding<T>>(bindings.begin(), bindings.size()));
}

}  // namespace darboux
