#pragma once

#include <string>
#include <vector>

#include "sigma/expr.hpp"

namespace sigma {

// One coefficient of an identity that should vanish identically.
struct Residual {
    std::string identity;
    std::string component;
    expr::Expr expression;
    bool zero = false;
};

class ResidualReport {
public:
    // Simplifies the residual and records its zero-test verdict.
    void add(std::string identity, std::string component, const expr::Expr& residual);
    void append(const ResidualReport& other);

    [[nodiscard]] bool all_zero() const;
    [[nodiscard]] std::vector<Residual> failures() const;
    [[nodiscard]] const std::vector<Residual>& entries() const { return entries_; }

private:
    std::vector<Residual> entries_;
};

}  // namespace sigma
