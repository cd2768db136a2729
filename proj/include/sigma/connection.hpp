#pragma once

#include <array>

#include "sigma/geometry.hpp"
#include "sigma/residual.hpp"

namespace sigma::connection {

using expr::Expr;
using geometry::FrameVector;
using geometry::KForm;
using geometry::OdeSurface;

// so(3)-valued connection form
//   theta = [[0, -alpha, -beta], [alpha, 0, -delta], [beta, delta, 0]]
// with d eta = -theta ^ eta.
struct ConnectionForms {
    KForm alpha{1};
    KForm beta{1};
    KForm delta{1};

    // theta^i_j, zero-based.
    [[nodiscard]] KForm theta(int i, int j) const;
};

// alpha = (f_y + 1) eta3, beta = (f_y + 1) eta2 + 2 f_p eta3, delta = -(f_y - 1) eta1.
[[nodiscard]] ConnectionForms connection_forms(const OdeSurface& s);

// nabla_X Y = sum_j [X(Y^j) + sum_k Y^k theta^j_k(X)] xi_j.
[[nodiscard]] FrameVector covariant_derivative(const OdeSurface& s, const FrameVector& x, const FrameVector& y);
[[nodiscard]] FrameVector covariant_derivative(const OdeSurface& s, const ConnectionForms& theta, const FrameVector& x,
                                               const FrameVector& y);

// Residuals of d eta^i + theta^i_j ^ eta^j (nine coefficients).
[[nodiscard]] ResidualReport verify_first_structure(const OdeSurface& s);
[[nodiscard]] ResidualReport verify_first_structure(const OdeSurface& s, const ConnectionForms& theta);

// theta^i_j + theta^j_i, nabla_{xi_i} xi_j - nabla_{xi_j} xi_i - [xi_i, xi_j],
// and the nine entries of the covariant-derivative table.
[[nodiscard]] ResidualReport verify_connection(const OdeSurface& s);

// nabla_{xi_i} xi_j in closed form, [i][j] zero-based.
[[nodiscard]] std::array<std::array<FrameVector, 3>, 3> covariant_table(const OdeSurface& s);

// Connection of the plane bundle D = ker eta2 with orthonormal coframe
// (varpi1, varpi2) = (eta1, eta3).
struct NormalBundleConnection {
    KForm omega12{1};    // over the eta basis
    KForm curvature{2};  // d(omega12), all components
    Expr curvature_on_bundle;  // varpi1 ^ varpi2 = eta1 ^ eta3 coefficient
    Expr closed_form;          // -4 (f_x + f f_p)_p
    bool matches_closed_form = false;
    bool within_hypothesis = false;  // f_y == 0
};

[[nodiscard]] NormalBundleConnection normal_connection(const OdeSurface& s);

struct ChernVerdict {
    bool trivial = false;
    Expr witness;    // f_x + f f_p, equal to Psi(x) when trivial
    Expr curvature;  // Omega^1_2 coefficient
    bool within_hypothesis = false;
};

// Trivial iff f_x + f f_p has vanishing p- and y-derivatives.
[[nodiscard]] ChernVerdict chern_trivial(const OdeSurface& s);

}  // namespace sigma::connection
