#include <map>
#include <utility>
#include <vector>

#include "expr_node.hpp"
#include "poly.hpp"

namespace sigma::expr {

namespace {

constexpr int kMaxExpandedPower = 16;
constexpr std::size_t kMaxExpandedTerms = 20000;

AtomId variable_atom(Var v) { return {static_cast<int>(v), std::string(name(v))}; }

void add_term(Poly& poly, const Monomial& m, const Number& c) {
    auto [it, inserted] = poly.terms.try_emplace(m, c);
    if (!inserted) it->second = it->second + c;
    if (it->second.is_zero()) poly.terms.erase(it);
}

Poly constant_poly(const Number& c) {
    Poly out;
    if (!c.is_zero()) out.terms.emplace(Monomial{}, c);
    return out;
}

Monomial multiply_monomials(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            const int e = a[i].second + b[j].second;
            if (e != 0) out.emplace_back(a[i].first, e);
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

Poly Poly::atom(const AtomId& id, const Expr& e, int exponent) {
    Poly out;
    out.atoms.emplace(id, e);
    out.terms.emplace(Monomial{{id, exponent}}, Number(1));
    return out;
}

Poly operator+(Poly a, const Poly& b) {
    a.atoms.insert(b.atoms.begin(), b.atoms.end());
    for (const auto& [m, c] : b.terms) add_term(a, m, c);
    return a;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly out;
    out.atoms = a.atoms;
    out.atoms.insert(b.atoms.begin(), b.atoms.end());
    for (const auto& [ma, ca] : a.terms) {
        for (const auto& [mb, cb] : b.terms) add_term(out, multiply_monomials(ma, mb), ca * cb);
    }
    return out;
}

bool Poly::is_single_term() const { return terms.size() == 1; }

std::optional<Number> Poly::constant_value() const {
    if (terms.empty()) return Number(0);
    if (terms.size() == 1 && terms.begin()->first.empty()) return terms.begin()->second;
    return std::nullopt;
}

Expr to_expr(const Poly& poly) {
    // Terms ordered by total degree, then lexicographically by monomial.
    std::vector<const std::pair<const Monomial, Number>*> ordered;
    ordered.reserve(poly.terms.size());
    for (const auto& entry : poly.terms) ordered.push_back(&entry);
    auto degree = [](const Monomial& m) {
        int d = 0;
        for (const auto& [id, e] : m) d += e < 0 ? -e : e;
        return d;
    };
    std::stable_sort(ordered.begin(), ordered.end(),
                     [&](const auto* a, const auto* b) { return degree(a->first) < degree(b->first); });

    std::vector<Expr> terms;
    terms.reserve(ordered.size());
    for (const auto* entry : ordered) {
        const auto& [m, c] = *entry;
        std::vector<Expr> factors;
        if (!c.is_one() || m.empty()) factors.emplace_back(c);
        for (const auto& [id, e] : m) {
            const Expr& a = poly.atoms.at(id);
            factors.push_back(e == 1 ? a : make_power(a, Expr(e)));
        }
        terms.push_back(make_product(std::move(factors)));
    }
    return make_sum(std::move(terms));
}

Poly to_poly(const Expr& e) {
    switch (e.kind()) {
        case Kind::constant: return constant_poly(e.value());
        case Kind::variable: return Poly::atom(variable_atom(e.var()), e, 1);
        case Kind::sum: {
            Poly out;
            for (const Expr& t : e.operands()) out = std::move(out) + to_poly(t);
            return out;
        }
        case Kind::product: {
            Poly out = constant_poly(Number(1));
            for (const Expr& f : e.operands()) {
                out = out * to_poly(f);
                if (out.terms.empty()) return out;
            }
            return out;
        }
        case Kind::function: {
            const Expr arg = simplify(e.operands()[0]);
            const Expr folded = apply(e.func(), arg);
            if (folded.kind() != Kind::function) return to_poly(folded);
            return Poly::atom({kAtomRank, folded.str()}, folded, 1);
        }
        case Kind::power: {
            const Expr exponent = simplify(e.operands()[1]);
            Poly base = to_poly(e.operands()[0]);
            const bool integral = exponent.is_constant() && exponent.value().is_integer();
            if (integral) {
                const std::int64_t n = exponent.value().numerator();
                if (n == 0) return constant_poly(Number(1));
                if (auto c = base.constant_value(); c && !(c->is_zero() && n < 0)) {
                    return constant_poly(c->pow(n));
                }
                if (base.is_single_term() && !base.terms.begin()->second.is_zero() && n >= -1'000'000 &&
                    n <= 1'000'000) {
                    const auto& [m, c] = *base.terms.begin();
                    Monomial raised;
                    for (const auto& [id, k] : m) raised.emplace_back(id, static_cast<int>(k * n));
                    Poly out;
                    out.atoms = base.atoms;
                    out.terms.emplace(std::move(raised), c.pow(n));
                    return out;
                }
                if (n > 0 && n <= kMaxExpandedPower) {
                    Poly out = constant_poly(Number(1));
                    bool within = true;
                    for (std::int64_t k = 0; k < n && within; ++k) {
                        out = out * base;
                        within = out.terms.size() <= kMaxExpandedTerms;
                    }
                    if (within) return out;
                }
                const Expr canonical_base = to_expr(base);
                return Poly::atom({kAtomRank, "(" + canonical_base.str() + ")"}, canonical_base, static_cast<int>(n));
            }
            const Expr canonical_base = to_expr(base);
            const Expr folded = pow(canonical_base, exponent);
            if (folded.kind() != Kind::power) return to_poly(folded);
            return Poly::atom({kAtomRank, folded.str()}, folded, 1);
        }
    }
    return {};
}

Expr simplify(const Expr& e) {
    if (e.kind() == Kind::constant || e.kind() == Kind::variable) return e;
    return to_expr(to_poly(e));
}

}  // namespace sigma::expr
