#pragma once

// Test-only oracles: random expression generation and finite differences.
// Nothing here calls diff/simplify, so checks built on it stay independent of
// the symbolic code paths they exercise.

#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "sigma/expr.hpp"

namespace sigma::testing {

using expr::Expr;
using expr::Point;
using expr::Var;

class ExprGenerator {
public:
    explicit ExprGenerator(std::uint64_t seed) : rng_(seed) {}

    Expr operator()(int depth = 3) {
        if (depth == 0 || pick(4) == 0) return leaf();
        switch (pick(9)) {
            case 0:
            case 1: return (*this)(depth - 1) + (*this)(depth - 1);
            case 2: return (*this)(depth - 1) - (*this)(depth - 1);
            case 3:
            case 4: return (*this)(depth - 1) * (*this)(depth - 1);
            case 5: return (*this)(depth - 1) / (Expr(3) + (*this)(depth - 1) * (*this)(depth - 1));
            case 6: return expr::pow((*this)(depth - 1), Expr(static_cast<int>(pick(3)) + 1));
            case 7: return expr::sin((*this)(depth - 1));
            default: return pick(2) ? expr::cos((*this)(depth - 1)) : expr::exp((*this)(depth - 2 < 0 ? 0 : depth - 2));
        }
    }

    Point point(double lo = -1.5, double hi = 1.5) {
        std::uniform_real_distribution<double> u(lo, hi);
        return {u(rng_), u(rng_), u(rng_)};
    }

    std::mt19937_64& rng() { return rng_; }

private:
    unsigned pick(unsigned n) { return std::uniform_int_distribution<unsigned>(0, n - 1)(rng_); }

    Expr leaf() {
        switch (pick(5)) {
            case 0: return expr::x;
            case 1: return expr::y;
            case 2: return expr::p;
            case 3: return Expr(static_cast<int>(pick(5)) - 2);
            default: return Expr::rational(static_cast<int>(pick(7)) - 3, 2);
        }
    }

    std::mt19937_64 rng_;
};

inline std::optional<double> try_eval(const Expr& e, const Point& q) {
    try {
        return expr::eval(e, q);
    } catch (const expr::DomainError&) {
        return std::nullopt;
    }
}

inline Point shifted(Point q, Var v, double h) {
    if (v == Var::x) q.x += h;
    if (v == Var::y) q.y += h;
    if (v == Var::p) q.p += h;
    return q;
}

// Central difference with step 1e-6 * max(1, |coordinate|). Points where a
// step of 1e-3 disagrees by more than 1% (close to a pole) are rejected.
inline std::optional<double> central_difference(const Expr& e, const Point& q, Var v) {
    auto step = [&](double h) -> std::optional<double> {
        auto fp = try_eval(e, shifted(q, v, h));
        auto fm = try_eval(e, shifted(q, v, -h));
        if (!fp || !fm) return std::nullopt;
        return (*fp - *fm) / (2.0 * h);
    };
    const double scale = std::max(1.0, std::abs(q[v]));
    auto fine = step(1e-6 * scale);
    auto coarse = step(1e-3 * scale);
    if (!fine || !coarse) return std::nullopt;
    if (std::abs(*fine - *coarse) > 1e-2 * std::max(1.0, std::abs(*fine))) return std::nullopt;
    return fine;
}

inline bool close_relative(double a, double b, double rel, double floor = 1.0) {
    return std::abs(a - b) <= rel * std::max({floor, std::abs(a), std::abs(b)});
}

}  // namespace sigma::testing
