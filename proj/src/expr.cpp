#include <cmath>
#include <stdexcept>

#include "expr_node.hpp"

namespace sigma::expr {

std::string_view name(Var v) {
    switch (v) {
        case Var::x: return "x";
        case Var::y: return "y";
        case Var::p: return "p";
    }
    return "?";
}

std::string_view name(Func f) {
    switch (f) {
        case Func::sin: return "sin";
        case Func::cos: return "cos";
        case Func::exp: return "exp";
        case Func::ln: return "ln";
        case Func::sqrt: return "sqrt";
    }
    return "?";
}

Expr make_node(Node&& node) { return Expr(std::make_shared<const Node>(std::move(node))); }

Expr::Expr() : Expr(Number(0)) {}

Expr::Expr(Number n) {
    Node node;
    node.kind = Kind::constant;
    node.value = n;
    node_ = std::make_shared<const Node>(std::move(node));
}

Expr Expr::variable(Var v) {
    Node node;
    node.kind = Kind::variable;
    node.var = v;
    return make_node(std::move(node));
}

Kind Expr::kind() const { return node_->kind; }
const Number& Expr::value() const { return node_->value; }
Var Expr::var() const { return node_->var; }
Func Expr::func() const { return node_->func; }
std::span<const Expr> Expr::operands() const { return node_->ops; }

Expr make_sum(std::vector<Expr> terms) {
    if (terms.empty()) return Expr(0);
    if (terms.size() == 1) return terms.front();
    Node node;
    node.kind = Kind::sum;
    node.ops = std::move(terms);
    return make_node(std::move(node));
}

Expr make_product(std::vector<Expr> factors) {
    if (factors.empty()) return Expr(1);
    if (factors.size() == 1) return factors.front();
    Node node;
    node.kind = Kind::product;
    node.ops = std::move(factors);
    return make_node(std::move(node));
}

Expr make_power(const Expr& base, const Expr& exponent) {
    Node node;
    node.kind = Kind::power;
    node.ops = {base, exponent};
    return make_node(std::move(node));
}

Expr make_function(Func f, const Expr& arg) {
    Node node;
    node.kind = Kind::function;
    node.func = f;
    node.ops = {arg};
    return make_node(std::move(node));
}

std::pair<Number, Expr> split_coefficient(const Expr& e) {
    if (e.is_constant()) return {e.value(), Expr(1)};
    if (e.kind() == Kind::product && e.operands().front().is_constant()) {
        auto ops = e.operands();
        return {ops.front().value(), make_product(std::vector<Expr>(ops.begin() + 1, ops.end()))};
    }
    return {Number(1), e};
}

Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant()) return Expr(a.value() + b.value());
    if (a.is_literal_zero()) return b;
    if (b.is_literal_zero()) return a;
    std::vector<Expr> terms;
    for (const Expr* side : {&a, &b}) {
        if (side->kind() == Kind::sum) {
            terms.insert(terms.end(), side->operands().begin(), side->operands().end());
        } else {
            terms.push_back(*side);
        }
    }
    return make_sum(std::move(terms));
}

Expr operator*(const Expr& a, const Expr& b) {
    Number coefficient(1);
    std::vector<Expr> factors;
    for (const Expr* side : {&a, &b}) {
        std::span<const Expr> parts = side->kind() == Kind::product ? side->operands() : std::span<const Expr>(side, 1);
        for (const Expr& f : parts) {
            if (f.is_constant()) {
                coefficient = coefficient * f.value();
            } else {
                factors.push_back(f);
            }
        }
    }
    if (coefficient.is_zero() && coefficient.is_exact()) return Expr(0);
    if (factors.empty()) return Expr(coefficient);
    if (!coefficient.is_one()) factors.insert(factors.begin(), Expr(coefficient));
    return make_product(std::move(factors));
}

Expr operator-(const Expr& a) { return Expr(-1) * a; }

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator/(const Expr& a, const Expr& b) {
    if (b.is_constant() && !b.value().is_zero()) return a * Expr(Number(1) / b.value());
    return a * pow(b, Expr(-1));
}

Expr pow(const Expr& base, const Expr& exponent) {
    if (exponent.is_literal_zero()) return Expr(1);
    if (exponent.is_literal_one()) return base;
    if (base.is_literal_one()) return Expr(1);
    if (base.is_constant() && exponent.is_constant()) {
        const Number& b = base.value();
        const Number& e = exponent.value();
        if (e.is_integer() && !(b.is_zero() && e.is_negative())) return Expr(b.pow(e.numerator()));
        if (!b.is_exact() || !e.is_exact()) {
            const double r = std::pow(b.to_double(), e.to_double());
            if (std::isfinite(r)) return Expr(Number::real(r));
        }
    }
    return make_power(base, exponent);
}

namespace {

std::optional<std::int64_t> exact_sqrt(std::int64_t n) {
    if (n < 0) return std::nullopt;
    auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(n))));
    for (std::int64_t c = std::max<std::int64_t>(0, r - 1); c <= r + 1; ++c) {
        if (c * c == n) return c;
    }
    return std::nullopt;
}

}  // namespace

Expr apply(Func f, const Expr& arg) {
    if (arg.is_constant()) {
        const Number& v = arg.value();
        if (v.is_exact()) {
            if (v.is_zero()) {
                if (f == Func::sin || f == Func::sqrt) return Expr(0);
                if (f == Func::cos || f == Func::exp) return Expr(1);
            }
            if (f == Func::ln && v.is_one()) return Expr(0);
            if (f == Func::sqrt && !v.is_negative()) {
                auto n = exact_sqrt(v.numerator());
                auto d = exact_sqrt(v.denominator());
                if (n && d) return Expr(Number::rational(*n, *d));
            }
        } else {
            const double a = v.to_double();
            double r = NAN;
            switch (f) {
                case Func::sin: r = std::sin(a); break;
                case Func::cos: r = std::cos(a); break;
                case Func::exp: r = std::exp(a); break;
                case Func::ln: r = a > 0 ? std::log(a) : NAN; break;
                case Func::sqrt: r = a >= 0 ? std::sqrt(a) : NAN; break;
            }
            if (std::isfinite(r)) return Expr(Number::real(r));
        }
    }
    return make_function(f, arg);
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case Kind::constant: return a.value() == b.value();
        case Kind::variable: return a.var() == b.var();
        case Kind::function:
            if (a.func() != b.func()) return false;
            break;
        default: break;
    }
    auto ao = a.operands();
    auto bo = b.operands();
    if (ao.size() != bo.size()) return false;
    for (std::size_t i = 0; i < ao.size(); ++i) {
        if (!(ao[i] == bo[i])) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

enum Prec : int { kSum = 1, kProduct = 2, kUnary = 3, kPower = 4, kAtom = 5 };

int precedence(const Expr& e) {
    switch (e.kind()) {
        case Kind::constant: {
            const Number& v = e.value();
            if (v.is_negative()) return kUnary;
            if (v.is_exact() && v.denominator() != 1) return kProduct;
            return kAtom;
        }
        case Kind::variable:
        case Kind::function: return kAtom;
        case Kind::sum: return kSum;
        case Kind::product: return split_coefficient(e).first.is_negative() ? kUnary : kProduct;
        case Kind::power: return kPower;
    }
    return kAtom;
}

std::string print(const Expr& e);

std::string wrap(const Expr& e, int min_prec) {
    std::string s = print(e);
    if (precedence(e) < min_prec) return "(" + s + ")";
    return s;
}

// A factor that prints in the denominator: x^(-n) with n a positive integer.
std::optional<Expr> denominator_factor(const Expr& f) {
    if (f.kind() != Kind::power) return std::nullopt;
    const Expr& e = f.operands()[1];
    if (!e.is_constant() || !e.value().is_integer() || !e.value().is_negative()) return std::nullopt;
    return pow(f.operands()[0], Expr(-e.value()));
}

std::string print_product(const Expr& e) {
    auto [coefficient, rest] = split_coefficient(e);
    std::span<const Expr> factors = rest.kind() == Kind::product ? rest.operands() : std::span<const Expr>(&rest, 1);

    std::vector<std::string> num;
    std::vector<std::string> den;
    const bool negative = coefficient.is_negative();
    const Number mag = coefficient.abs();
    if (mag.is_exact()) {
        if (mag.numerator() != 1) num.push_back(std::to_string(mag.numerator()));
        if (mag.denominator() != 1) den.push_back(std::to_string(mag.denominator()));
    } else if (!mag.is_one()) {
        num.push_back(mag.str());
    }
    for (const Expr& f : factors) {
        if (f.is_literal_one()) continue;
        if (auto d = denominator_factor(f)) {
            den.push_back(wrap(*d, kPower));
        } else {
            num.push_back(wrap(f, kPower));
        }
    }
    auto join = [](const std::vector<std::string>& parts) {
        std::string s;
        for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "*" : "") + parts[i];
        return s;
    };
    std::string out = negative ? "-" : "";
    out += num.empty() ? "1" : join(num);
    if (!den.empty()) out += "/" + (den.size() == 1 ? den.front() : "(" + join(den) + ")");
    return out;
}

std::string print(const Expr& e) {
    switch (e.kind()) {
        case Kind::constant: return e.value().str();
        case Kind::variable: return std::string(name(e.var()));
        case Kind::function: return std::string(name(e.func())) + "(" + print(e.operands()[0]) + ")";
        case Kind::power: {
            const Expr& base = e.operands()[0];
            const Expr& exponent = e.operands()[1];
            std::string b = wrap(base, kAtom);
            bool bare = exponent.kind() == Kind::variable ||
                        (exponent.is_constant() && exponent.value().is_integer() && !exponent.value().is_negative());
            return b + "^" + (bare ? print(exponent) : "(" + print(exponent) + ")");
        }
        case Kind::product: return print_product(e);
        case Kind::sum: {
            std::string out;
            bool first = true;
            for (const Expr& t : e.operands()) {
                auto [c, rest] = split_coefficient(t);
                if (!first && c.is_negative()) {
                    out += " - " + wrap(-t, kSum + 1);
                } else {
                    out += (first ? "" : " + ") + wrap(t, kSum + 1);
                }
                first = false;
            }
            return out;
        }
    }
    return "?";
}

}  // namespace

std::string to_string(const Expr& e) { return print(e); }
std::string Expr::str() const { return print(*this); }

}  // namespace sigma::expr
