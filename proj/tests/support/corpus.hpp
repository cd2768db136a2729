#pragma once

// Shared test corpus: 50 seeded random polynomials f (degree <= 3 in each of
// x, y, p, integer coefficients in -2..2) plus a handful of named cases.

#include <random>
#include <string>
#include <vector>

#include "sigma/expr.hpp"
#include "sigma/geometry.hpp"

namespace sigma::testing {

struct CorpusEntry {
    std::string label;
    expr::Expr f;
};

inline expr::Expr random_polynomial(std::mt19937_64& rng, int max_degree, int coefficient_bound) {
    std::uniform_int_distribution<int> coefficient(-coefficient_bound, coefficient_bound);
    expr::Expr out;
    for (int i = 0; i <= max_degree; ++i) {
        for (int j = 0; j <= max_degree; ++j) {
            for (int k = 0; k <= max_degree; ++k) {
                const int c = coefficient(rng);
                if (c == 0) continue;
                out += expr::Expr(c) * expr::pow(expr::x, expr::Expr(i)) * expr::pow(expr::y, expr::Expr(j)) *
                       expr::pow(expr::p, expr::Expr(k));
            }
        }
    }
    return expr::simplify(out);
}

inline const std::vector<std::string>& named_cases() {
    static const std::vector<std::string> names = {"0", "y", "x + p^2", "x^2", "x*p", "sin(x) + p"};
    return names;
}

inline std::vector<CorpusEntry> corpus(std::uint64_t seed = 20190601, int random_count = 50) {
    std::vector<CorpusEntry> out;
    for (const auto& text : named_cases()) out.push_back({text, expr::parse(text)});
    std::mt19937_64 rng(seed);
    for (int i = 0; i < random_count; ++i) {
        out.push_back({"random#" + std::to_string(i), random_polynomial(rng, 3, 2)});
    }
    return out;
}

inline geometry::FrameVector random_frame_vector(std::mt19937_64& rng) {
    return {{random_polynomial(rng, 1, 2), random_polynomial(rng, 1, 2), random_polynomial(rng, 1, 2)}};
}

}  // namespace sigma::testing
