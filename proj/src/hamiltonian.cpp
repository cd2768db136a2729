#include "sigma/hamiltonian.hpp"

namespace sigma::hamiltonian {

using expr::Var;
using geometry::directional_derivative;

namespace {

bool zero(const Expr& e) { return expr::is_zero(e); }

Expr vol_coefficient_of_self_wedge(const OdeSurface& s, const KForm& j) {
    return expr::simplify(geometry::wedge(j, geometry::exterior_derivative(s, j))[0]);
}

void add_field_residuals(ResidualReport& report, const std::string& identity, const FrameVector& a,
                         const FrameVector& b) {
    for (std::size_t k = 0; k < 3; ++k) report.add(identity, "xi" + std::to_string(k + 1), a[k] - b[k]);
}

}  // namespace

bool BiVector::is_zero() const { return zero(b23) && zero(b31) && zero(b12); }

KForm poisson_one_form(const OdeSurface&, const BiVector& omega) {
    return KForm(1, {omega.b23, omega.b31, omega.b12}).simplified();
}

Expr jacobi_residual(const OdeSurface& s, const KForm& j) { return vol_coefficient_of_self_wedge(s, j); }

FrameVector hamiltonian_field(const OdeSurface& s, const BiVector& omega, const Expr& H) {
    // Contract the first slot of each xi_a ^ xi_b with dH.
    const Expr h1 = directional_derivative(s, FrameVector::xi(1), H);
    const Expr h2 = directional_derivative(s, FrameVector::xi(2), H);
    const Expr h3 = directional_derivative(s, FrameVector::xi(3), H);
    FrameVector out;
    out[0] = omega.b31 * h3 - omega.b12 * h2;
    out[1] = omega.b12 * h1 - omega.b23 * h3;
    out[2] = omega.b23 * h2 - omega.b31 * h1;
    return out.simplified();
}

FrameVector hamiltonian_field_cross(const OdeSurface& s, const BiVector& omega, const Expr& H) {
    return geometry::cross(geometry::sharp(poisson_one_form(s, omega)), geometry::gradient(s, H));
}

CoordinateVector equations_of_motion(const OdeSurface& s, const Expr& H) {
    const Expr hx = expr::diff(H, Var::x);
    const Expr hy = expr::diff(H, Var::y);
    const Expr hp = expr::diff(H, Var::p);
    return {expr::simplify(Expr(-4) * hy), expr::simplify(Expr(4) * (hx + s.f() * hp)),
            expr::simplify(Expr(-4) * s.f() * hy)};
}

HamiltonianSystem make_system(const OdeSurface& s, const BiVector& omega, const Expr& H) {
    return {s, H, omega, hamiltonian_field(s, omega, H)};
}

Expr lambda_of(const OdeSurface& s, const Expr& H) { return directional_derivative(s, FrameVector::xi(1), H); }

Expr mu_of(const OdeSurface& s, const Expr& H) { return directional_derivative(s, FrameVector::xi(2), H); }

BiVector omega2(const OdeSurface& s, const Expr& H) { return {lambda_of(s, H), mu_of(s, H), Expr(0)}; }

Omega2Verdict omega2_poisson_check(const OdeSurface& s, const Expr& H) {
    Omega2Verdict out;
    out.lambda = lambda_of(s, H);
    out.mu = mu_of(s, H);
    out.poisson = zero(out.mu);
    out.degenerate = out.poisson && zero(out.lambda);
    out.jacobi = jacobi_residual(s, poisson_one_form(s, omega2(s, H)));
    out.jacobi_zero = zero(out.jacobi);
    return out;
}

BiHamiltonianReport bihamiltonian_pair(const OdeSurface& s, const Expr& H) {
    BiHamiltonianReport out;
    out.H = expr::simplify(H);
    out.H1 = Expr::rational(-1, 2) * expr::p;
    out.lambda = lambda_of(s, H);

    const Expr hy = expr::diff(H, Var::y);
    out.preconditions.push_back({"f_y = 0", zero(s.fy()), s.fy()});
    out.preconditions.push_back({"H_y = 0", zero(hy), hy});
    out.degenerate = zero(out.lambda);
    out.preconditions.push_back({"xi1(H) != 0", !out.degenerate, out.lambda});
    out.accepted = true;
    for (const auto& pre : out.preconditions) out.accepted = out.accepted && pre.holds;

    out.omega1 = BiVector::xi12();
    out.omega2 = BiVector{out.lambda, Expr(0), Expr(0)};
    out.first = make_system(s, out.omega1, out.H);
    out.second = make_system(s, out.omega2, out.H1);
    out.field = out.first.field;

    add_field_residuals(out.checks, "Omega1(dH) - Omega2(dH1)", out.first.field, out.second.field);
    add_field_residuals(out.checks, "Omega1(dH) - xi3 x grad H", out.first.field,
                        hamiltonian_field_cross(s, out.omega1, out.H));
    add_field_residuals(out.checks, "Omega2(dH1) - J2 x grad H1", out.second.field,
                        hamiltonian_field_cross(s, out.omega2, out.H1));
    const auto motion = equations_of_motion(s, out.H);
    const auto coords = geometry::to_coordinates(s, out.field);
    for (std::size_t k = 0; k < 3; ++k) {
        static const char* names[] = {"d_x", "d_y", "d_p"};
        out.checks.add("v - equations of motion", names[k], coords[k] - motion[k]);
    }
    out.checks.add("v(H)", "scalar", directional_derivative(s, out.field, out.H));

    const KForm sum = poisson_one_form(s, out.omega1) + poisson_one_form(s, out.omega2);
    out.compatibility = vol_coefficient_of_self_wedge(s, sum);
    out.compatible = zero(out.compatibility);
    return out;
}

ReebReport reeb_bihamiltonian(const OdeSurface& s) {
    ReebReport out;
    out.preconditions.push_back({"f_y = 0", zero(s.fy()), s.fy()});
    out.preconditions.push_back({"f_p = 0", zero(s.fp()), s.fp()});
    const auto antiderivative = expr::integrate_polynomial(s.f(), Var::x);
    out.preconditions.push_back({"f polynomial in x", antiderivative.has_value(), s.f()});
    out.accepted = true;
    for (const auto& pre : out.preconditions) out.accepted = out.accepted && pre.holds;
    if (!out.accepted) return out;

    out.H = Expr::rational(1, 2) * expr::x;
    out.H1 = expr::simplify(Expr::rational(1, 2) * *antiderivative - Expr::rational(1, 2) * expr::p);
    const Expr lambda = lambda_of(s, out.H);
    out.J2 = geometry::sharp(lambda * KForm::eta(1));
    out.grad_H = geometry::gradient(s, out.H);
    out.grad_H1 = geometry::gradient(s, out.H1);
    out.via_first = geometry::cross(FrameVector::xi(3), out.grad_H);
    out.via_second = geometry::cross(out.J2, out.grad_H1);
    out.represents_reeb =
        (out.via_first - FrameVector::xi(2)).is_zero() && (out.via_second - FrameVector::xi(2)).is_zero();
    out.compatibility = vol_coefficient_of_self_wedge(s, KForm::eta(3) + lambda * KForm::eta(1));
    out.compatible = zero(out.compatibility);
    return out;
}

bool is_heisenberg(const OdeSurface& s) {
    return zero(s.fy()) && zero(s.fp()) && geometry::has_constant_structure(s);
}

}  // namespace sigma::hamiltonian
