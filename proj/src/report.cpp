#include "sigma/report.hpp"

namespace sigma::report {

using serialize::Json;
using serialize::to_json;

namespace {

Json forms_json(const std::array<geometry::KForm, 3>& forms) {
    Json out = Json::object();
    for (std::size_t i = 0; i < 3; ++i) out["d eta" + std::to_string(i + 1)] = to_json(forms[i]);
    return out;
}

}  // namespace

ReportDocument build_report(const std::string& f_text, const ReportOptions& options) {
    const expr::Expr f = expr::parse(f_text);
    const auto s = geometry::make_surface(f);
    ReportDocument doc;
    auto suite = [&doc](const std::string& name, const ResidualReport& r) {
        if (!r.all_zero()) doc.failed_suites.push_back(name);
        return to_json(r);
    };

    Json& body = doc.body;
    body["tool"] = "sigma-forge";
    body["version"] = SIGMA_FORGE_VERSION;
    body["input"] = {{"f", f_text},
                     {"canonical", to_json(expr::simplify(f))},
                     {"f_x", to_json(s.fx())},
                     {"f_y", to_json(s.fy())},
                     {"f_p", to_json(s.fp())}};
    body["classification"] = to_json(contact::classify(s));

    body["structure_equations"] = {{"computed", forms_json(s.structure_equations())},
                                   {"constant_coefficients", geometry::has_constant_structure(s)},
                                   {"residuals", suite("structure_equations", geometry::verify_structure_equations(s))}};

    auto theta = connection::connection_forms(s);
    if (options.inject_fault) theta.alpha = expr::Expr(2) * theta.alpha;
    body["connection"] = {{"alpha", to_json(theta.alpha)},
                          {"beta", to_json(theta.beta)},
                          {"delta", to_json(theta.delta)},
                          {"first_structure", suite("first_structure", connection::verify_first_structure(s, theta))},
                          {"identities", suite("connection", connection::verify_connection(s))}};

    body["contact"] = {{"identities", suite("contact", contact::verify_contact_identities(s))}};

    body["poisson"] = {{"one_form", to_json(hamiltonian::poisson_one_form(s, hamiltonian::BiVector::xi12()))},
                       {"jacobi_residual", to_json(hamiltonian::jacobi_residual(s, geometry::KForm::eta(3)))},
                       {"poisson", expr::is_zero(s.fy())}};

    const auto pair = hamiltonian::bihamiltonian_pair(s, f);
    Json bi{{"applicable", pair.accepted}};
    bi.update(to_json(pair));
    if (pair.accepted && !pair.checks.all_zero()) doc.failed_suites.push_back("bihamiltonian");
    if (pair.accepted && !pair.compatible) doc.failed_suites.push_back("bihamiltonian_compatibility");
    body["bihamiltonian"] = bi;

    const bool heisenberg = hamiltonian::is_heisenberg(s);
    Json heis{{"flag", heisenberg}};
    if (heisenberg) heis["structure_constants"] = forms_json(s.structure_equations());
    const auto reeb = hamiltonian::reeb_bihamiltonian(s);
    if (reeb.accepted && !(reeb.represents_reeb && reeb.compatible)) doc.failed_suites.push_back("reeb");
    heis["reeb"] = to_json(reeb);
    body["heisenberg"] = heis;

    const auto chern = connection::chern_trivial(s);
    const auto normal = connection::normal_connection(s);
    Json chern_json = to_json(chern);
    chern_json["omega12"] = to_json(normal.omega12);
    chern_json["closed_form"] = to_json(normal.closed_form);
    chern_json["matches_closed_form"] = normal.matches_closed_form;
    if (normal.within_hypothesis && !normal.matches_closed_form) doc.failed_suites.push_back("chern");
    body["chern"] = chern_json;

    body["suites_passed"] = doc.suites_passed();
    body["failed_suites"] = doc.failed_suites;
    return doc;
}

}  // namespace sigma::report
