#pragma once

#include <vector>

#include "sigma/expr.hpp"

namespace sigma::expr {

struct Node {
    Kind kind = Kind::constant;
    Number value;
    Var var = Var::x;
    Func func = Func::sin;
    std::vector<Expr> ops;
};

Expr make_node(Node&& node);

// Raw constructors: no folding beyond what the caller already did.
Expr make_sum(std::vector<Expr> terms);
Expr make_product(std::vector<Expr> factors);
Expr make_power(const Expr& base, const Expr& exponent);
Expr make_function(Func f, const Expr& arg);

// Leading numeric coefficient of a product (1 otherwise) and the remaining factor.
std::pair<Number, Expr> split_coefficient(const Expr& e);

}  // namespace sigma::expr
