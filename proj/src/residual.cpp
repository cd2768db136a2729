#include "sigma/residual.hpp"

#include <algorithm>

namespace sigma {

void ResidualReport::add(std::string identity, std::string component, const expr::Expr& residual) {
    const expr::Expr simplified = expr::simplify(residual);
    const bool zero = expr::is_zero(simplified);
    entries_.push_back({std::move(identity), std::move(component), simplified, zero});
}

void ResidualReport::append(const ResidualReport& other) {
    entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

bool ResidualReport::all_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Residual& r) { return r.zero; });
}

std::vector<Residual> ResidualReport::failures() const {
    std::vector<Residual> out;
    std::copy_if(entries_.begin(), entries_.end(), std::back_inserter(out), [](const Residual& r) { return !r.zero; });
    return out;
}

}  // namespace sigma
