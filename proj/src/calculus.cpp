#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <random>

#include "expr_node.hpp"
#include "poly.hpp"

namespace sigma::expr {

namespace {

bool contains(const Expr& e, Var v) {
    if (e.kind() == Kind::variable) return e.var() == v;
    for (const Expr& op : e.operands()) {
        if (contains(op, v)) return true;
    }
    return false;
}

Expr raw_diff(const Expr& e, Var v) {
    switch (e.kind()) {
        case Kind::constant: return Expr(0);
        case Kind::variable: return Expr(e.var() == v ? 1 : 0);
        case Kind::sum: {
            Expr out;
            for (const Expr& t : e.operands()) out += raw_diff(t, v);
            return out;
        }
        case Kind::product: {
            auto factors = e.operands();
            Expr out;
            for (std::size_t i = 0; i < factors.size(); ++i) {
                Expr d = raw_diff(factors[i], v);
                if (d.is_literal_zero()) continue;
                for (std::size_t j = 0; j < factors.size(); ++j) {
                    if (j != i) d *= factors[j];
                }
                out += d;
            }
            return out;
        }
        case Kind::power: {
            const Expr& base = e.operands()[0];
            const Expr& exponent = e.operands()[1];
            if (!contains(exponent, v)) {
                return exponent * pow(base, exponent - Expr(1)) * raw_diff(base, v);
            }
            return e * (raw_diff(exponent, v) * ln(base) + exponent * raw_diff(base, v) / base);
        }
        case Kind::function: {
            const Expr& a = e.operands()[0];
            const Expr da = raw_diff(a, v);
            if (da.is_literal_zero()) return Expr(0);
            switch (e.func()) {
                case Func::sin: return cos(a) * da;
                case Func::cos: return -sin(a) * da;
                case Func::exp: return e * da;
                case Func::ln: return da / a;
                case Func::sqrt: return da / (Expr(2) * e);
            }
        }
    }
    return Expr(0);
}

Expr raw_substitute(const Expr& e, Var v, const Expr& value) {
    switch (e.kind()) {
        case Kind::constant: return e;
        case Kind::variable: return e.var() == v ? value : e;
        case Kind::sum: {
            Expr out;
            for (const Expr& t : e.operands()) out += raw_substitute(t, v, value);
            return out;
        }
        case Kind::product: {
            Expr out(1);
            for (const Expr& f : e.operands()) out *= raw_substitute(f, v, value);
            return out;
        }
        case Kind::power:
            return pow(raw_substitute(e.operands()[0], v, value), raw_substitute(e.operands()[1], v, value));
        case Kind::function: return apply(e.func(), raw_substitute(e.operands()[0], v, value));
    }
    return e;
}

double checked(double v, const char* what) {
    if (!std::isfinite(v)) throw OverflowError(std::string("non-finite value in ") + what);
    return v;
}

}  // namespace

Expr diff(const Expr& e, Var v) { return simplify(raw_diff(e, v)); }

Expr substitute(const Expr& e, Var v, const Expr& value) { return simplify(raw_substitute(e, v, value)); }

double eval(const Expr& e, const Point& q) {
    switch (e.kind()) {
        case Kind::constant: return e.value().to_double();
        case Kind::variable: return q[e.var()];
        case Kind::sum: {
            double s = 0.0;
            for (const Expr& t : e.operands()) s += eval(t, q);
            return checked(s, "sum");
        }
        case Kind::product: {
            double s = 1.0;
            for (const Expr& f : e.operands()) s *= eval(f, q);
            return checked(s, "product");
        }
        case Kind::power: {
            const double b = eval(e.operands()[0], q);
            const Expr& exponent = e.operands()[1];
            if (exponent.is_constant() && exponent.value().is_integer()) {
                const auto n = exponent.value().numerator();
                if (b == 0.0 && n < 0) throw DomainError("division by zero");
                return checked(std::pow(b, static_cast<double>(n)), "power");
            }
            const double ex = eval(exponent, q);
            if (b == 0.0 && ex < 0.0) throw DomainError("division by zero");
            if (b < 0.0 && ex != std::floor(ex)) throw DomainError("non-integer power of a negative base");
            return checked(std::pow(b, ex), "power");
        }
        case Kind::function: {
            const double a = eval(e.operands()[0], q);
            switch (e.func()) {
                case Func::sin: return std::sin(a);
                case Func::cos: return std::cos(a);
                case Func::exp: return checked(std::exp(a), "exp");
                case Func::ln:
                    if (a <= 0.0) throw DomainError("ln of a non-positive value");
                    return std::log(a);
                case Func::sqrt:
                    if (a < 0.0) throw DomainError("sqrt of a negative value");
                    return std::sqrt(a);
            }
        }
    }
    return 0.0;
}

std::optional<std::uint64_t> parse_seed(const std::string& text) {
    if (text.empty() || !std::isdigit(static_cast<unsigned char>(text.front()))) return std::nullopt;
    errno = 0;
    char* end = nullptr;
    const unsigned long long seed = std::strtoull(text.c_str(), &end, 0);
    if (errno == ERANGE || *end != '\0') return std::nullopt;
    return static_cast<std::uint64_t>(seed);
}

const ZeroTestOptions& default_zero_test_options() {
    static const ZeroTestOptions options = [] {
        ZeroTestOptions o;
        if (const char* env = std::getenv("SIGMA_FORGE_SEED")) {
            if (const auto seed = parse_seed(env)) o.seed = *seed;
        }
        return o;
    }();
    return options;
}

bool is_zero(const Expr& e, const ZeroTestOptions& options) {
    const Expr s = simplify(e);
    if (s.is_constant()) {
        const Number& v = s.value();
        return v.is_exact() ? v.is_zero() : std::abs(v.to_double()) < options.tolerance;
    }
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> magnitude(0.1, 2.0);
    std::bernoulli_distribution negative(0.5);
    auto coordinate = [&] { return negative(rng) ? -magnitude(rng) : magnitude(rng); };

    int valid = 0;
    const int max_attempts = options.samples * 20;
    for (int attempt = 0; attempt < max_attempts && valid < options.samples; ++attempt) {
        Point q;
        q.x = coordinate();
        q.y = coordinate();
        q.p = coordinate();
        double value = 0.0;
        try {
            value = eval(s, q);
        } catch (const DomainError&) {
            continue;
        }
        if (std::abs(value) >= options.tolerance) return false;
        ++valid;
    }
    return valid > 0;
}

bool depends_on(const Expr& e, Var v) { return contains(simplify(e), v); }

std::optional<Expr> integrate_polynomial(const Expr& e, Var v) {
    const Poly poly = to_poly(simplify(e));
    Poly out;
    const Expr variable = Expr::variable(v);
    const AtomId id{static_cast<int>(v), std::string(name(v))};
    for (const auto& [m, c] : poly.terms) {
        int k = 0;
        if (!m.empty()) {
            if (m.size() != 1 || m.front().first != id || m.front().second < 0) return std::nullopt;
            k = m.front().second;
        }
        out = std::move(out) + Poly::atom(id, variable, k + 1) * to_poly(Expr(c / Number(k + 1)));
    }
    return to_expr(out);
}

}  // namespace sigma::expr
