#pragma once

#include <array>

#include "sigma/geometry.hpp"
#include "sigma/residual.hpp"

// Contact metric structure (phi, xi2, eta2, g) carried by the ODE manifold.
namespace sigma::contact {

using expr::Expr;
using geometry::ExprMatrix;
using geometry::FrameVector;
using geometry::KForm;
using geometry::OdeSurface;

// (1,1) tensor in the frame: m[i][j] is the xi_i component of T(xi_j).
struct EndoField {
    ExprMatrix m;

    static EndoField identity();
    // a (x) v : X -> a(X) v, for a 1-form a.
    static EndoField outer(const KForm& a, const FrameVector& v);
    static EndoField from_columns(const std::array<FrameVector, 3>& columns);

    [[nodiscard]] FrameVector operator()(const FrameVector& v) const;
    [[nodiscard]] FrameVector column(int j) const;
    [[nodiscard]] Expr trace() const;
    [[nodiscard]] EndoField simplified() const;
    [[nodiscard]] bool is_zero() const;

    // Composition (a * b)(X) = a(b(X)).
    friend EndoField operator*(const EndoField& a, const EndoField& b);
    friend EndoField operator+(const EndoField& a, const EndoField& b);
    friend EndoField operator-(const EndoField& a, const EndoField& b);
    friend EndoField operator*(const Expr& s, const EndoField& a);
};

// Covariant symmetric 2-tensor in the frame: t[i][j] = T(xi_i, xi_j).
using FrameTensor = ExprMatrix;

// phi = eta3 (x) xi1 - eta1 (x) xi3.
[[nodiscard]] EndoField phi(const OdeSurface& s);
[[nodiscard]] FrameVector phi_apply(const OdeSurface& s, const FrameVector& v);

// (L_V T)(X) = [V, T X] - T [V, X].
[[nodiscard]] EndoField lie_derivative(const OdeSurface& s, const FrameVector& along, const EndoField& t);
// (L_V g)(Y, Z) = V(g(Y,Z)) - g([V,Y], Z) - g(Y, [V,Z]).
[[nodiscard]] FrameTensor lie_derivative_metric(const OdeSurface& s, const FrameVector& along);
[[nodiscard]] FrameTensor lie_derivative_metric(const OdeSurface& s);  // along xi2

// h = (1/2) L_{xi2} phi, from brackets.
[[nodiscard]] EndoField h_tensor(const OdeSurface& s);
[[nodiscard]] EndoField h_tensor(const OdeSurface& s, const EndoField& phi_field);
// -f_y (eta1 (x) xi1 - eta3 (x) xi3).
[[nodiscard]] EndoField h_closed_form(const OdeSurface& s);
// -2 f_y (eta1 (x) eta3 + eta3 (x) eta1).
[[nodiscard]] FrameTensor lie_derivative_metric_closed_form(const OdeSurface& s);

struct Classification {
    bool contact_metric = true;
    bool k_contact = false;
    bool sasakian = false;
    Expr witness;  // f_y
};

// K-contact from the Killing test on xi2; Sasakian coincides in dimension 3.
[[nodiscard]] Classification classify(const OdeSurface& s);

// phi^2 = -id + eta2 (x) xi2, g(phi X, phi Y) = g(X,Y) - eta2(X) eta2(Y),
// (1/2) d eta2(X,Y) = g(X, phi Y), phi(xi2) = 0, eta2 o phi = 0, and the h
// identities (closed form, symmetry, trace, anticommutation, h(xi2) = 0),
// plus the Lie derivative of g against its closed form.
[[nodiscard]] ResidualReport verify_contact_identities(const OdeSurface& s);
[[nodiscard]] ResidualReport verify_contact_identities(const OdeSurface& s, const EndoField& phi_field);

}  // namespace sigma::contact
