#include "sigma/serialize.hpp"

namespace sigma::serialize {

Json to_json(const expr::Expr& e) { return expr::to_string(e); }

Json to_json(const geometry::KForm& form) {
    Json basis = Json::object();
    for (std::size_t k = 0; k < form.size(); ++k) {
        basis[geometry::KForm::basis_name(form.degree(), k)] = to_json(expr::simplify(form[k]));
    }
    return Json{{"degree", form.degree()}, {"basis", basis}};
}

Json to_json(const geometry::FrameVector& v) {
    Json out = Json::object();
    for (std::size_t i = 0; i < 3; ++i) out["xi" + std::to_string(i + 1)] = to_json(expr::simplify(v[i]));
    return out;
}

Json to_json(const ResidualReport& report) {
    Json entries = Json::array();
    for (const auto& r : report.entries()) {
        entries.push_back({{"identity", r.identity},
                           {"component", r.component},
                           {"expression", to_json(r.expression)},
                           {"zero", r.zero}});
    }
    return Json{{"all_zero", report.all_zero()}, {"count", report.entries().size()}, {"entries", entries}};
}

Json to_json(const contact::Classification& c) {
    return Json{{"contact_metric", c.contact_metric},
                {"k_contact", c.k_contact},
                {"sasakian", c.sasakian},
                {"witness", to_json(c.witness)}};
}

Json to_json(const hamiltonian::BiVector& b) {
    return Json{{"xi2^xi3", to_json(b.b23)}, {"xi3^xi1", to_json(b.b31)}, {"xi1^xi2", to_json(b.b12)}};
}

Json to_json(const std::vector<hamiltonian::Precondition>& preconditions) {
    Json out = Json::array();
    for (const auto& pre : preconditions) {
        out.push_back({{"name", pre.name}, {"holds", pre.holds}, {"witness", to_json(pre.witness)}});
    }
    return out;
}

Json to_json(const hamiltonian::BiHamiltonianReport& r) {
    return Json{{"H", to_json(r.H)},
                {"H1", to_json(r.H1)},
                {"omega1", to_json(r.omega1)},
                {"omega2", to_json(r.omega2)},
                {"field", to_json(r.field)},
                {"compatible", r.compatible},
                {"preconditions", to_json(r.preconditions)},
                {"accepted", r.accepted},
                {"degenerate", r.degenerate},
                {"lambda", to_json(r.lambda)},
                {"compatibility_residual", to_json(r.compatibility)},
                {"checks", to_json(r.checks)}};
}

Json to_json(const hamiltonian::ReebReport& r) {
    Json out{{"accepted", r.accepted}, {"preconditions", to_json(r.preconditions)}};
    if (!r.accepted) return out;
    out["H"] = to_json(r.H);
    out["H1"] = to_json(r.H1);
    out["J2"] = to_json(r.J2);
    out["grad_H"] = to_json(r.grad_H);
    out["grad_H1"] = to_json(r.grad_H1);
    out["xi3_cross_grad_H"] = to_json(r.via_first);
    out["J2_cross_grad_H1"] = to_json(r.via_second);
    out["represents_reeb"] = r.represents_reeb;
    out["compatible"] = r.compatible;
    return out;
}

Json to_json(const connection::ChernVerdict& c) {
    return Json{{"trivial", c.trivial},
                {"witness", to_json(c.witness)},
                {"curvature", to_json(c.curvature)},
                {"within_hypothesis", c.within_hypothesis}};
}

Json to_json(const dynamics::Trajectory& t) {
    Json samples = Json::array();
    for (std::size_t i = 0; i < t.size(); ++i) {
        Json row = Json::object();
        if (t.parameter != "x") row[t.parameter] = t.t[i];
        row["x"] = t.points[i].x;
        row["y"] = t.points[i].y;
        row["p"] = t.points[i].p;
        for (const auto& m : t.monitors) row[m.name] = m.values[i];
        samples.push_back(row);
    }
    return Json{{"parameter", t.parameter},
                {"status", dynamics::to_string(t.status)},
                {"message", t.message},
                {"samples", samples}};
}

}  // namespace sigma::serialize
