#pragma once

#include <array>
#include <span>
#include <vector>

#include "sigma/expr.hpp"
#include "sigma/residual.hpp"

// The 3-manifold of a second-order ODE y'' = f(x, y, p) with coframe
//   eta1 = dx/2,  eta2 = (dy - p dx)/2,  eta3 = (dp - f dx)/2
// and dual orthonormal frame
//   xi1 = 2(d_x + p d_y + f d_p),  xi2 = 2 d_y,  xi3 = 2 d_p.
// All tensor algebra happens in this frame; coordinates appear only at the
// boundary. Component index 0 is xi1 / eta1, and so on.
namespace sigma::geometry {

using expr::Expr;

// Components over (d_x, d_y, d_p) or (dx, dy, dp).
using CoordinateVector = std::array<Expr, 3>;
using ExprMatrix = std::array<std::array<Expr, 3>, 3>;

struct FrameVector {
    std::array<Expr, 3> c;

    // xi_i for i in 1..3.
    static FrameVector xi(int i);

    Expr& operator[](std::size_t i) { return c[i]; }
    const Expr& operator[](std::size_t i) const { return c[i]; }

    [[nodiscard]] FrameVector simplified() const;
    [[nodiscard]] bool is_zero() const;

    friend FrameVector operator+(const FrameVector& a, const FrameVector& b);
    friend FrameVector operator-(const FrameVector& a, const FrameVector& b);
    friend FrameVector operator*(const Expr& s, const FrameVector& v);
    friend FrameVector operator-(const FrameVector& v);
};

// Differential form over the sorted wedge basis of {eta1, eta2, eta3}:
//   degree 0: {1}; degree 1: {eta1, eta2, eta3};
//   degree 2: {eta1^eta2, eta1^eta3, eta2^eta3}; degree 3: {eta1^eta2^eta3}.
class KForm {
public:
    KForm() : KForm(0) {}
    explicit KForm(int degree);
    KForm(int degree, std::vector<Expr> coefficients);

    static KForm function(const Expr& h);
    // eta^i for i in 1..3.
    static KForm eta(int i);
    static KForm vol();
    // Basis element eta^{i1} ^ ... with 1-based, strictly increasing indices.
    static KForm basis(std::initializer_list<int> indices);

    [[nodiscard]] int degree() const { return degree_; }
    [[nodiscard]] std::size_t size() const { return coefficients_.size(); }
    [[nodiscard]] const Expr& operator[](std::size_t k) const { return coefficients_[k]; }
    Expr& operator[](std::size_t k) { return coefficients_[k]; }
    [[nodiscard]] std::span<const Expr> coefficients() const { return coefficients_; }

    // Zero-based frame indices of the k-th basis element.
    [[nodiscard]] static std::vector<int> basis_indices(int degree, std::size_t k);
    [[nodiscard]] static std::size_t basis_position(std::span<const int> sorted_indices);
    // "eta1^eta3" etc.
    [[nodiscard]] static std::string basis_name(int degree, std::size_t k);

    [[nodiscard]] KForm simplified() const;
    [[nodiscard]] bool is_zero() const;

    friend KForm operator+(const KForm& a, const KForm& b);
    friend KForm operator-(const KForm& a, const KForm& b);
    friend KForm operator*(const Expr& s, const KForm& a);

private:
    int degree_;
    std::vector<Expr> coefficients_;
};

class OdeSurface {
public:
    explicit OdeSurface(Expr f);

    [[nodiscard]] const Expr& f() const { return f_; }
    [[nodiscard]] const Expr& fx() const { return fx_; }
    [[nodiscard]] const Expr& fy() const { return fy_; }
    [[nodiscard]] const Expr& fp() const { return fp_; }

    // d(eta^i) for i = 0..2, derived from the coordinate brackets of the frame.
    [[nodiscard]] const std::array<KForm, 3>& structure_equations() const { return d_eta_; }

private:
    Expr f_, fx_, fy_, fp_;
    std::array<KForm, 3> d_eta_;
};

[[nodiscard]] OdeSurface make_surface(const Expr& f);

// i in 1..3.
[[nodiscard]] CoordinateVector frame_in_coordinates(const OdeSurface& s, int i);
[[nodiscard]] CoordinateVector coframe_in_coordinates(const OdeSurface& s, int i);
[[nodiscard]] CoordinateVector to_coordinates(const OdeSurface& s, const FrameVector& v);
[[nodiscard]] FrameVector from_coordinates(const OdeSurface& s, const CoordinateVector& v);

// g = sum eta^i (x) eta^i expanded over (dx, dy, dp).
[[nodiscard]] ExprMatrix metric_coordinate_matrix(const OdeSurface& s);

[[nodiscard]] Expr inner(const FrameVector& a, const FrameVector& b);
[[nodiscard]] Expr directional_derivative(const OdeSurface& s, const FrameVector& v, const Expr& h);

[[nodiscard]] KForm wedge(const KForm& a, const KForm& b);
[[nodiscard]] KForm exterior_derivative(const OdeSurface& s, const KForm& a);
// Throws std::invalid_argument for 0-forms.
[[nodiscard]] KForm interior_product(const FrameVector& v, const KForm& a);
// Determinant convention: vol(xi1, xi2, xi3) = 1, (a^b)(X,Y) = a(X)b(Y) - a(Y)b(X).
[[nodiscard]] Expr evaluate(const KForm& a, std::span<const FrameVector> vectors);

// Throws std::invalid_argument unless a is a 1-form.
[[nodiscard]] FrameVector sharp(const KForm& a);
[[nodiscard]] KForm flat(const FrameVector& v);
[[nodiscard]] FrameVector cross(const FrameVector& a, const FrameVector& b);
[[nodiscard]] FrameVector gradient(const OdeSurface& s, const Expr& h);
[[nodiscard]] FrameVector lie_bracket(const OdeSurface& s, const FrameVector& a, const FrameVector& b);

// The displayed closed form d eta1 = 0, d eta2 = 2 eta1^eta3,
// d eta3 = 2 f_y eta1^eta2 + 2 f_p eta1^eta3.
[[nodiscard]] std::array<KForm, 3> expected_structure_equations(const OdeSurface& s);
[[nodiscard]] ResidualReport verify_structure_equations(const OdeSurface& s);

// True when every structure coefficient is a constant (a local Lie group).
[[nodiscard]] bool has_constant_structure(const OdeSurface& s);

}  // namespace sigma::geometry
