#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sigma/expr.hpp"

namespace sigma::expr {

// Atoms sort by rank first so that x, y, p precede every other atom.
using AtomId = std::pair<int, std::string>;
inline constexpr int kAtomRank = 10;

// Sorted by AtomId; exponents are non-zero integers.
using Monomial = std::vector<std::pair<AtomId, int>>;

struct Poly {
    std::map<Monomial, Number> terms;
    std::map<AtomId, Expr> atoms;

    static Poly atom(const AtomId& id, const Expr& e, int exponent);
    [[nodiscard]] bool is_single_term() const;
    [[nodiscard]] std::optional<Number> constant_value() const;
};

Poly operator+(Poly a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);

Poly to_poly(const Expr& e);
Expr to_expr(const Poly& poly);

}  // namespace sigma::expr
