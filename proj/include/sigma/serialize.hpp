#pragma once

#include <json.hpp>

#include "sigma/connection.hpp"
#include "sigma/contact.hpp"
#include "sigma/dynamics.hpp"
#include "sigma/hamiltonian.hpp"
#include "sigma/residual.hpp"

// JSON views of the engine's results. Expressions appear as their printed
// canonical form; key order is fixed so output is byte-stable.
namespace sigma::serialize {

using Json = nlohmann::ordered_json;

[[nodiscard]] Json to_json(const expr::Expr& e);
// {degree, basis: {"eta1^eta3": "..."}}; zero coefficients are kept.
[[nodiscard]] Json to_json(const geometry::KForm& form);
// {"xi1": ..., "xi2": ..., "xi3": ...}
[[nodiscard]] Json to_json(const geometry::FrameVector& v);
// {all_zero, count, entries: [{identity, component, expression, zero}]}
[[nodiscard]] Json to_json(const ResidualReport& report);
// {contact_metric, k_contact, sasakian, witness}
[[nodiscard]] Json to_json(const contact::Classification& c);
[[nodiscard]] Json to_json(const hamiltonian::BiVector& b);
[[nodiscard]] Json to_json(const std::vector<hamiltonian::Precondition>& preconditions);
// {H, H1, omega1, omega2, field, compatible, preconditions, ...}
[[nodiscard]] Json to_json(const hamiltonian::BiHamiltonianReport& r);
[[nodiscard]] Json to_json(const hamiltonian::ReebReport& r);
[[nodiscard]] Json to_json(const connection::ChernVerdict& c);
// {parameter, status, message, samples: [{t, x, y, p, <monitors>}]}
[[nodiscard]] Json to_json(const dynamics::Trajectory& t);

}  // namespace sigma::serialize
