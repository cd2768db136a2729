#pragma once

#include <string>
#include <vector>

#include "sigma/geometry.hpp"
#include "sigma/residual.hpp"

// Poisson structures on the ODE manifold, Hamiltonian vector fields and the
// bi-Hamiltonian constructions built from them.
namespace sigma::hamiltonian {

using expr::Expr;
using geometry::CoordinateVector;
using geometry::FrameVector;
using geometry::KForm;
using geometry::OdeSurface;

// b23 xi2^xi3 + b31 xi3^xi1 + b12 xi1^xi2.
struct BiVector {
    Expr b23, b31, b12;

    static BiVector xi12() { return {Expr(0), Expr(0), Expr(1)}; }
    [[nodiscard]] bool is_zero() const;
};

// iota_Omega vol: the 1-form with frame components (b23, b31, b12).
[[nodiscard]] KForm poisson_one_form(const OdeSurface& s, const BiVector& omega);

// vol coefficient of j ^ dj; the bivector is Poisson iff this vanishes.
[[nodiscard]] Expr jacobi_residual(const OdeSurface& s, const KForm& j);

// Omega(dH, .) in the frame.
[[nodiscard]] FrameVector hamiltonian_field(const OdeSurface& s, const BiVector& omega, const Expr& H);
// J x grad H with J = sharp(iota_Omega vol).
[[nodiscard]] FrameVector hamiltonian_field_cross(const OdeSurface& s, const BiVector& omega, const Expr& H);
// Equations of motion for Omega = xi1^xi2:
//   xdot = -4 H_y, ydot = 4 (H_x + f H_p), pdot = -4 f H_y.
[[nodiscard]] CoordinateVector equations_of_motion(const OdeSurface& s, const Expr& H);

struct HamiltonianSystem {
    OdeSurface surface{Expr(0)};
    Expr H;
    BiVector poisson;
    FrameVector field;
};

[[nodiscard]] HamiltonianSystem make_system(const OdeSurface& s, const BiVector& omega, const Expr& H);

// lambda = xi1(H), mu = xi2(H).
[[nodiscard]] Expr lambda_of(const OdeSurface& s, const Expr& H);
[[nodiscard]] Expr mu_of(const OdeSurface& s, const Expr& H);

// Omega2 = mu xi3^xi1 + lambda xi2^xi3.
[[nodiscard]] BiVector omega2(const OdeSurface& s, const Expr& H);

struct Omega2Verdict {
    bool poisson = false;  // mu == 0
    bool degenerate = false;  // lambda == mu == 0
    Expr lambda, mu;
    // mu xi3(lambda) - lambda xi3(mu) - 2 mu^2, and whether it vanishes.
    Expr jacobi;
    bool jacobi_zero = false;
};

[[nodiscard]] Omega2Verdict omega2_poisson_check(const OdeSurface& s, const Expr& H);

struct Precondition {
    std::string name;
    bool holds = false;
    Expr witness;
};

struct BiHamiltonianReport {
    bool accepted = false;
    std::vector<Precondition> preconditions;
    Expr H;
    Expr H1;  // -p/2
    BiVector omega1, omega2;
    HamiltonianSystem first, second;
    FrameVector field;
    // Where lambda vanishes the two structures degenerate together.
    Expr lambda;
    bool degenerate = false;
    ResidualReport checks;  // field agreement across representations, v(H) = 0
    Expr compatibility;     // vol coefficient of (eta3 + eta) ^ d(eta3 + eta)
    bool compatible = false;
};

// Requires f_y = 0, H_y = 0 and xi1(H) not identically zero. The report is
// filled in regardless; `accepted` is false when any precondition fails.
[[nodiscard]] BiHamiltonianReport bihamiltonian_pair(const OdeSurface& s, const Expr& H);

struct ReebReport {
    bool accepted = false;
    std::vector<Precondition> preconditions;
    Expr H;   // x/2
    Expr H1;  // F(x)/2 - p/2 with F' = f, F(0) = 0
    FrameVector J2;
    FrameVector grad_H, grad_H1;
    FrameVector via_first;   // xi3 x grad H
    FrameVector via_second;  // J2 x grad H1
    bool represents_reeb = false;
    Expr compatibility;
    bool compatible = false;
};

// Requires f_y = 0, f_p = 0 and f polynomial in x.
[[nodiscard]] ReebReport reeb_bihamiltonian(const OdeSurface& s);

// f_y = f_p = 0 with constant structure coefficients (Heisenberg coframe).
[[nodiscard]] bool is_heisenberg(const OdeSurface& s);

}  // namespace sigma::hamiltonian
