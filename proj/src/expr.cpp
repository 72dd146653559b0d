#include "darboux/expr.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace darboux {

bool is_unary(Op op) { return op >= Op::Neg && op <= Op::Abs; }
bool is_binary(Op op) { return op >= Op::Add && op <= Op::Pow; }

std::string_view op_name(Op op) {
    switch (op) {
    case Op::Const: return "const";
    case Op::Var: return "var";
    case Op::Neg: return "neg";
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Tan: return "tan";
    case Op::Exp: return "exp";
    case Op::Ln: return "ln";
    case Op::Sqrt: return "sqrt";
    case Op::Abs: return "abs";
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::Div: return "/";
    case Op::Pow: return "^";
    }
    return "?";
}

Expr::Expr() : Expr(constant(0.0)) {}

Expr Expr::constant(double v) {
    auto n = std::make_shared<Node>();
    n->op = Op::Const;
    n->value = v;
    return Expr(std::move(n));
}

Expr Expr::variable(std::string name) {
    auto n = std::make_shared<Node>();
    n->op = Op::Var;
    n->name = std::move(name);
    return Expr(std::move(n));
}

Expr Expr::unary(Op op, Expr arg) {
    if (!is_unary(op)) throw std::invalid_argument("Expr::unary: not a unary operator");
    auto n = std::make_shared<Node>();
    n->op = op;
    n->children.push_back(std::move(arg));
    return Expr(std::move(n));
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
    if (!is_binary(op)) throw std::invalid_argument("Expr::binary: not a binary operator");
    auto n = std::make_shared<Node>();
    n->op = op;
    n->children.push_back(std::move(lhs));
    n->children.push_back(std::move(rhs));
    return Expr(std::move(n));
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.op() != b.op()) return false;
    switch (a.op()) {
    case Op::Const: return std::bit_cast<std::uint64_t>(a.value()) == std::bit_cast<std::uint64_t>(b.value());
    case Op::Var: return a.name() == b.name();
    default: break;
    }
    if (a.children().size() != b.children().size()) return false;
    for (std::size_t i = 0; i < a.children().size(); ++i)
        if (!structurally_equal(a.arg(i), b.arg(i))) return false;
    return true;
}

std::size_t node_count(const Expr& e) {
    std::size_t n = 1;
    for (const auto& c : e.children()) n += node_count(c);
    return n;
}

namespace {

void collect_vars(const Expr& e, std::set<std::string>& out) {
    if (e.op() == Op::Var) out.insert(e.name());
    for (const auto& c : e.children()) collect_vars(c, out);
}

}  // namespace

std::set<std::string> free_variables(const Expr& e) {
    std::set<std::string> out;
    collect_vars(e, out);
    return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct FunctionEntry {
    std::string_view name;
    Op op;
};

constexpr FunctionEntry kFunctions[] = {
    {"sin", Op::Sin}, {"cos", Op::Cos}, {"tan", Op::Tan}, {"exp", Op::Exp},
    {"ln", Op::Ln},   {"log", Op::Ln},  {"sqrt", Op::Sqrt}, {"abs", Op::Abs},
};

class Parser {
public:
    Parser(std::string_view src, const std::set<std::string>& vars) : src_(src), vars_(vars) {}

    Expr run() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError(pos_, "empty expression");
        Expr e = parse_expr();
        skip_ws();
        if (pos_ < src_.size()) throw ParseError(pos_, std::string("unexpected '") + src_[pos_] + "'");
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= src_.size()) throw ParseError(pos_, std::string("expected '") + c + "' before end of input");
            throw ParseError(pos_, std::string("expected '") + c + "'");
        }
    }

    Expr parse_expr() {
        Expr lhs = parse_term();
        for (;;) {
            if (accept('+')) lhs = Expr::binary(Op::Add, lhs, parse_term());
            else if (accept('-')) lhs = Expr::binary(Op::Sub, lhs, parse_term());
            else return lhs;
        }
    }

    Expr parse_term() {
        Expr lhs = parse_unary();
        for (;;) {
            if (accept('*')) lhs = Expr::binary(Op::Mul, lhs, parse_unary());
            else if (accept('/')) lhs = Expr::binary(Op::Div, lhs, parse_unary());
            else return lhs;
        }
    }

    Expr parse_unary() {
        if (accept('-')) {
            Expr operand = parse_unary();
            if (operand.is_constant()) return Expr::constant(-operand.value());
            return Expr::unary(Op::Neg, operand);
        }
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_primary();
        if (accept('^')) return Expr::binary(Op::Pow, base, parse_unary());
        return base;
    }

    Expr parse_primary() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError(pos_, "expected an operand before end of input");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            Expr inner = parse_expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        throw ParseError(pos_, std::string("unexpected '") + c + "'");
    }

    Expr parse_number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        };
        digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            digits();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t save = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) digits();
            else pos_ = save;  // not an exponent
        }
        std::string text(src_.substr(start, pos_ - start));
        if (text == ".") throw ParseError(start, "malformed number");
        // from_chars rejects a leading '.', so normalise first.
        if (text.front() == '.') text.insert(text.begin(), '0');
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
            throw ParseError(start, "malformed number '" + text + "'");
        return Expr::constant(v);
    }

    Expr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        const std::string name(src_.substr(start, pos_ - start));
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == '(') {
            for (const auto& f : kFunctions) {
                if (f.name == name) {
                    ++pos_;
                    Expr arg = parse_expr();
                    expect(')');
                    return Expr::unary(f.op, arg);
                }
            }
            throw ParseError(start, "unknown function '" + name + "'");
        }
        if (vars_.count(name)) return Expr::variable(name);
        if (name == "pi") return Expr::constant(std::numbers::pi);
        if (name == "e") return Expr::constant(std::numbers::e);
        throw ParseError(start, "undeclared identifier '" + name + "'");
    }

    std::string_view src_;
    const std::set<std::string>& vars_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view source, const std::set<std::string>& allowed_vars) {
    return Parser(source, allowed_vars).run();
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

void print(const Expr& e, std::string& out) {
    switch (e.op()) {
    case Op::Const:
        if (std::signbit(e.value())) {
            out += "(-";
            out += format_number(-e.value());
            out += ')';
        } else {
            out += format_number(e.value());
        }
        return;
    case Op::Var:
        out += e.name();
        return;
    case Op::Neg:
        out += "(-";
        print(e.arg(0), out);
        out += ')';
        return;
    default:
        break;
    }
    if (is_unary(e.op())) {
        out += op_name(e.op());
        out += '(';
        print(e.arg(0), out);
        out += ')';
        return;
    }
    out += '(';
    print(e.arg(0), out);
    out += ' ';
    out += op_name(e.op());
    out += ' ';
    print(e.arg(1), out);
    out += ')';
}

}  // namespace

std::string to_string(const Expr& e) {
    std::string out;
    print(e, out);
    return out;
}

// ---------------------------------------------------------------------------
// Builders

Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() + b.value());
    if (a.is_constant(0.0)) return b;
    if (b.is_constant(0.0)) return a;
    return Expr::binary(Op::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() - b.value());
    if (b.is_constant(0.0)) return a;
    if (a.is_constant(0.0)) return -b;
    return Expr::binary(Op::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() * b.value());
    if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr::constant(0.0);
    if (a.is_constant(1.0)) return b;
    if (b.is_constant(1.0)) return a;
    if (a.is_constant(-1.0)) return -b;
    if (b.is_constant(-1.0)) return -a;
    return Expr::binary(Op::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant() && b.value() != 0.0) return Expr::constant(a.value() / b.value());
    if (a.is_constant(0.0) && !b.is_constant(0.0)) return Expr::constant(0.0);
    if (b.is_constant(1.0)) return a;
    return Expr::binary(Op::Div, a, b);
}

Expr operator-(const Expr& a) {
    if (a.is_constant()) return Expr::constant(-a.value());
    if (a.op() == Op::Neg) return a.arg(0);
    return Expr::unary(Op::Neg, a);
}

Expr pow(const Expr& a, const Expr& b) {
    if (b.is_constant(0.0)) return Expr::constant(1.0);
    if (b.is_constant(1.0)) return a;
    if (a.is_constant() && b.is_constant()) {
        const double r = std::pow(a.value(), b.value());
        if (std::isfinite(r)) return Expr::constant(r);
    }
    return Expr::binary(Op::Pow, a, b);
}

namespace {

Expr fold_unary(Op op, const Expr& a, double (*f)(double)) {
    if (a.is_constant()) {
        const double r = f(a.value());
        if (std::isfinite(r)) return Expr::constant(r);
    }
    return Expr::unary(op, a);
}

}  // namespace

Expr sin(const Expr& a) { return fold_unary(Op::Sin, a, [](double x) { return std::sin(x); }); }
Expr cos(const Expr& a) { return fold_unary(Op::Cos, a, [](double x) { return std::cos(x); }); }
Expr tan(const Expr& a) { return fold_unary(Op::Tan, a, [](double x) { return std::tan(x); }); }
Expr exp(const Expr& a) { return fold_unary(Op::Exp, a, [](double x) { return std::exp(x); }); }
Expr ln(const Expr& a) {
    if (a.is_constant() && !(a.value() > 0.0)) return Expr::unary(Op::Ln, a);
    return fold_unary(Op::Ln, a, [](double x) { return std::log(x); });
}
Expr sqrt(const Expr& a) {
    if (a.is_constant() && a.value() < 0.0) return Expr::unary(Op::Sqrt, a);
    return fold_unary(Op::Sqrt, a, [](double x) { return std::sqrt(x); });
}
Expr abs(const Expr& a) { return fold_unary(Op::Abs, a, [](double x) { return std::abs(x); }); }

// ---------------------------------------------------------------------------
// Differentiation

namespace {

Expr d1(const Expr& e, std::string_view var) {
    const Expr zero = Expr::constant(0.0);
    switch (e.op()) {
    case Op::Const: return zero;
    case Op::Var: return Expr::constant(e.name() == var ? 1.0 : 0.0);
    default: break;
    }
    const Expr& a = e.arg(0);
    const Expr da = d1(a, var);
    if (is_unary(e.op())) {
        if (da.is_constant(0.0)) return zero;
        switch (e.op()) {
        case Op::Neg: return -da;
        case Op::Sin: return cos(a) * da;
        case Op::Cos: return -(sin(a) * da);
        case Op::Tan: return da / pow(cos(a), Expr::constant(2.0));
        case Op::Exp: return e * da;
        case Op::Ln: return da / a;
        case Op::Sqrt: return da / (Expr::constant(2.0) * e);
        case Op::Abs: return (a / e) * da;
        default: break;
        }
    }
    const Expr& b = e.arg(1);
    const Expr db = d1(b, var);
    switch (e.op()) {
    case Op::Add: return da + db;
    case Op::Sub: return da - db;
    case Op::Mul: return da * b + a * db;
    case Op::Div:
        if (db.is_constant(0.0)) return da / b;
        return (da * b - a * db) / pow(b, Expr::constant(2.0));
    case Op::Pow:
        if (db.is_constant(0.0)) {
            if (da.is_constant(0.0)) return zero;
            return b * pow(a, b - Expr::constant(1.0)) * da;
        }
        if (da.is_constant(0.0)) return e * ln(a) * db;
        return e * (db * ln(a) + b * da / a);
    default: break;
    }
    throw std::logic_error("differentiate: malformed expression");
}

}  // namespace

Expr differentiate(const Expr& e, std::string_view var, int order) {
    if (order < 1) throw std::invalid_argument("differentiate: order must be >= 1");
    Expr r = e;
    for (int k = 0; k < order; ++k) r = d1(r, var);
    return r;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace detail {

void throw_domain(std::string_view what, double x) {
    throw DomainError(std::string(what) + " (argument " + std::to_string(x) + ")");
}

void throw_unbound(std::string_view name) {
    throw UnboundVariable("no binding for '" + std::string(name) + "'");
}

}  // namespace detail

double evaluate(const Expr& e, const std::map<std::string, double>& bindings) {
    std::vector<Binding<double>> flat;
    flat.reserve(bindings.size());
    for (const auto& [k, v] : bindings) flat.emplace_back(k, v);
    const double r = evaluate_with<double>(e, std::span<const Binding<double>>(flat));
    if (!std::isfinite(r)) throw DomainError("non-finite result");
    return r;
}

}  // namespace darboux
