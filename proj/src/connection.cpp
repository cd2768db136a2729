#include "sigma/connection.hpp"

namespace sigma::connection {

using expr::Var;
using geometry::exterior_derivative;
using geometry::wedge;

KForm ConnectionForms::theta(int i, int j) const {
    // Row i, column j of the antisymmetric matrix.
    const int key = i * 3 + j;
    switch (key) {
        case 0 * 3 + 1: return Expr(-1) * alpha;
        case 0 * 3 + 2: return Expr(-1) * beta;
        case 1 * 3 + 0: return alpha;
        case 1 * 3 + 2: return Expr(-1) * delta;
        case 2 * 3 + 0: return beta;
        case 2 * 3 + 1: return delta;
        default: return KForm(1);
    }
}

ConnectionForms connection_forms(const OdeSurface& s) {
    const Expr fy_plus = expr::simplify(s.fy() + Expr(1));
    ConnectionForms out;
    out.alpha = fy_plus * KForm::eta(3);
    out.beta = fy_plus * KForm::eta(2) + Expr(2) * s.fp() * KForm::eta(3);
    out.delta = expr::simplify(Expr(1) - s.fy()) * KForm::eta(1);
    return out;
}

FrameVector covariant_derivative(const OdeSurface& s, const ConnectionForms& theta, const FrameVector& x,
                                 const FrameVector& y) {
    FrameVector out;
    const std::array<FrameVector, 1> arg = {x};
    for (int j = 0; j < 3; ++j) {
        Expr component = geometry::directional_derivative(s, x, y[static_cast<std::size_t>(j)]);
        for (int k = 0; k < 3; ++k) {
            if (j == k || y[static_cast<std::size_t>(k)].is_literal_zero()) continue;
            component += y[static_cast<std::size_t>(k)] * geometry::evaluate(theta.theta(j, k), arg);
        }
        out[static_cast<std::size_t>(j)] = expr::simplify(component);
    }
    return out;
}

FrameVector covariant_derivative(const OdeSurface& s, const FrameVector& x, const FrameVector& y) {
    return covariant_derivative(s, connection_forms(s), x, y);
}

ResidualReport verify_first_structure(const OdeSurface& s, const ConnectionForms& theta) {
    ResidualReport report;
    for (int i = 0; i < 3; ++i) {
        KForm lhs = exterior_derivative(s, KForm::eta(i + 1));
        for (int j = 0; j < 3; ++j) lhs = lhs + wedge(theta.theta(i, j), KForm::eta(j + 1));
        for (std::size_t k = 0; k < lhs.size(); ++k) {
            report.add("d(eta" + std::to_string(i + 1) + ") + theta^" + std::to_string(i + 1) + "_j ^ eta^j",
                       KForm::basis_name(2, k), lhs[k]);
        }
    }
    return report;
}

ResidualReport verify_first_structure(const OdeSurface& s) { return verify_first_structure(s, connection_forms(s)); }

std::array<std::array<FrameVector, 3>, 3> covariant_table(const OdeSurface& s) {
    const FrameVector xi1 = FrameVector::xi(1);
    const FrameVector xi2 = FrameVector::xi(2);
    const FrameVector xi3 = FrameVector::xi(3);
    const Expr fy_minus = expr::simplify(s.fy() - Expr(1));
    const Expr fy_plus = expr::simplify(s.fy() + Expr(1));
    const Expr two_fp = expr::simplify(Expr(2) * s.fp());
    const FrameVector zero;
    return {{
        {zero, -(fy_minus * xi3), fy_minus * xi2},
        {fy_plus * xi3, zero, -(fy_plus * xi1)},
        {fy_plus * xi2 + two_fp * xi3, -(fy_plus * xi1), -(two_fp * xi1)},
    }};
}

ResidualReport verify_connection(const OdeSurface& s) {
    ResidualReport report;
    const ConnectionForms theta = connection_forms(s);
    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
            const KForm sum = theta.theta(i, j) + theta.theta(j, i);
            for (std::size_t k = 0; k < 3; ++k) {
                report.add("theta^" + std::to_string(i + 1) + "_" + std::to_string(j + 1) + " + theta^" +
                               std::to_string(j + 1) + "_" + std::to_string(i + 1),
                           KForm::basis_name(1, k), sum[k]);
            }
        }
    }
    const auto table = covariant_table(s);
    for (int i = 0; i < 3; ++i) {
        const FrameVector xi_i = FrameVector::xi(i + 1);
        for (int j = 0; j < 3; ++j) {
            const FrameVector xi_j = FrameVector::xi(j + 1);
            const FrameVector nabla = covariant_derivative(s, theta, xi_i, xi_j);
            const auto& want = table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            const std::string pair = std::to_string(i + 1) + std::to_string(j + 1);
            for (std::size_t k = 0; k < 3; ++k) {
                report.add("nabla_xi" + std::to_string(i + 1) + " xi" + std::to_string(j + 1) + " - table",
                           "xi" + std::to_string(k + 1), nabla[k] - want[k]);
            }
            if (j <= i) continue;
            const FrameVector torsion = nabla - covariant_derivative(s, theta, xi_j, xi_i) -
                                        geometry::lie_bracket(s, xi_i, xi_j);
            for (std::size_t k = 0; k < 3; ++k) {
                report.add("torsion(xi" + std::to_string(i + 1) + ", xi" + std::to_string(j + 1) + ")",
                           "xi" + std::to_string(k + 1), torsion[k]);
            }
        }
    }
    return report;
}

NormalBundleConnection normal_connection(const OdeSurface& s) {
    // Restrict d varpi^i to D by keeping the eta1^eta3 coefficient, then solve
    // d varpi^1 = -omega12 ^ varpi^2, d varpi^2 = omega12 ^ varpi^1 for
    // omega12 = a varpi^1 + b varpi^2: a = -c1, b = -c2.
    const auto& d_eta = s.structure_equations();
    const std::size_t on_bundle = KForm::basis_position(std::array<int, 2>{0, 2});
    const Expr c1 = d_eta[0][on_bundle];
    const Expr c2 = d_eta[2][on_bundle];

    NormalBundleConnection out;
    out.omega12 = KForm(1, {expr::simplify(-c1), Expr(0), expr::simplify(-c2)});
    out.curvature = exterior_derivative(s, out.omega12);
    out.curvature_on_bundle = out.curvature[on_bundle];
    const Expr chern_source = expr::simplify(s.fx() + s.f() * s.fp());
    out.closed_form = expr::simplify(Expr(-4) * expr::diff(chern_source, Var::p));
    out.matches_closed_form = expr::is_zero(out.curvature_on_bundle - out.closed_form);
    out.within_hypothesis = expr::is_zero(s.fy());
    return out;
}

ChernVerdict chern_trivial(const OdeSurface& s) {
    ChernVerdict out;
    out.witness = expr::simplify(s.fx() + s.f() * s.fp());
    out.trivial = expr::is_zero(expr::diff(out.witness, Var::p)) && expr::is_zero(expr::diff(out.witness, Var::y));
    out.curvature = normal_connection(s).curvature_on_bundle;
    out.within_hypothesis = expr::is_zero(s.fy());
    return out;
}

}  // namespace sigma::connection
