#include "sigma/geometry.hpp"

#include <stdexcept>

namespace sigma::geometry {

using expr::Var;

namespace {

constexpr std::array<Var, 3> kCoords = {Var::x, Var::y, Var::p};

std::size_t basis_size(int degree) {
    switch (degree) {
        case 0:
        case 3: return 1;
        case 1:
        case 2: return 3;
        default: throw std::invalid_argument("form degree must be in 0..3");
    }
}

// Sign of the permutation sorting `indices` (which must be distinct).
int sort_sign(std::vector<int>& indices) {
    int sign = 1;
    for (std::size_t i = 0; i < indices.size(); ++i) {
        for (std::size_t j = 0; j + 1 < indices.size() - i; ++j) {
            if (indices[j] > indices[j + 1]) {
                std::swap(indices[j], indices[j + 1]);
                sign = -sign;
            }
        }
    }
    return sign;
}

CoordinateVector frame_coordinates(const Expr& f, const FrameVector& v) {
    const Expr two(2);
    return {two * v[0], two * (expr::p * v[0] + v[1]), two * (f * v[0] + v[2])};
}

FrameVector frame_components(const Expr& f, const CoordinateVector& v) {
    const Expr half = Expr::rational(1, 2);
    return FrameVector{{half * v[0], half * (v[1] - expr::p * v[0]), half * (v[2] - f * v[0])}}.simplified();
}

Expr coordinate_derivative(const CoordinateVector& v, const Expr& h) {
    Expr out;
    for (std::size_t a = 0; a < 3; ++a) out += v[a] * expr::diff(h, kCoords[a]);
    return expr::simplify(out);
}

CoordinateVector coordinate_bracket(const CoordinateVector& a, const CoordinateVector& b) {
    CoordinateVector out;
    for (std::size_t k = 0; k < 3; ++k) {
        out[k] = expr::simplify(coordinate_derivative(a, b[k]) - coordinate_derivative(b, a[k]));
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// FrameVector

FrameVector FrameVector::xi(int i) {
    if (i < 1 || i > 3) throw std::invalid_argument("frame index must be in 1..3");
    FrameVector v;
    v.c[static_cast<std::size_t>(i - 1)] = Expr(1);
    return v;
}

FrameVector FrameVector::simplified() const {
    return {{expr::simplify(c[0]), expr::simplify(c[1]), expr::simplify(c[2])}};
}

bool FrameVector::is_zero() const {
    return expr::is_zero(c[0]) && expr::is_zero(c[1]) && expr::is_zero(c[2]);
}

FrameVector operator+(const FrameVector& a, const FrameVector& b) {
    return FrameVector{{a[0] + b[0], a[1] + b[1], a[2] + b[2]}}.simplified();
}

FrameVector operator-(const FrameVector& a, const FrameVector& b) {
    return FrameVector{{a[0] - b[0], a[1] - b[1], a[2] - b[2]}}.simplified();
}

FrameVector operator*(const Expr& s, const FrameVector& v) {
    return FrameVector{{s * v[0], s * v[1], s * v[2]}}.simplified();
}

FrameVector operator-(const FrameVector& v) { return Expr(-1) * v; }

// ---------------------------------------------------------------------------
// KForm

KForm::KForm(int degree) : degree_(degree), coefficients_(basis_size(degree)) {}

KForm::KForm(int degree, std::vector<Expr> coefficients) : degree_(degree), coefficients_(std::move(coefficients)) {
    if (coefficients_.size() != basis_size(degree)) throw std::invalid_argument("wrong number of form coefficients");
}

KForm KForm::function(const Expr& h) { return KForm(0, {h}); }

KForm KForm::eta(int i) { return basis({i}); }

KForm KForm::vol() { return basis({1, 2, 3}); }

KForm KForm::basis(std::initializer_list<int> indices) {
    std::vector<int> zero_based;
    for (int i : indices) {
        if (i < 1 || i > 3) throw std::invalid_argument("coframe index must be in 1..3");
        zero_based.push_back(i - 1);
    }
    for (std::size_t k = 1; k < zero_based.size(); ++k) {
        if (zero_based[k] <= zero_based[k - 1]) throw std::invalid_argument("basis indices must increase");
    }
    KForm out(static_cast<int>(zero_based.size()));
    out[basis_position(zero_based)] = Expr(1);
    return out;
}

std::vector<int> KForm::basis_indices(int degree, std::size_t k) {
    switch (degree) {
        case 0: return {};
        case 1: return {static_cast<int>(k)};
        case 2: {
            static constexpr std::array<std::array<int, 2>, 3> kPairs = {{{0, 1}, {0, 2}, {1, 2}}};
            return {kPairs[k][0], kPairs[k][1]};
        }
        case 3: return {0, 1, 2};
        default: throw std::invalid_argument("form degree must be in 0..3");
    }
}

std::size_t KForm::basis_position(std::span<const int> idx) {
    switch (idx.size()) {
        case 0:
        case 3: return 0;
        case 1: return static_cast<std::size_t>(idx[0]);
        case 2: return idx[0] == 0 ? static_cast<std::size_t>(idx[1] - 1) : 2;
        default: throw std::invalid_argument("form degree must be in 0..3");
    }
}

std::string KForm::basis_name(int degree, std::size_t k) {
    if (degree == 0) return "1";
    std::string out;
    for (int i : basis_indices(degree, k)) out += (out.empty() ? "eta" : "^eta") + std::to_string(i + 1);
    return out;
}

KForm KForm::simplified() const {
    KForm out = *this;
    for (Expr& c : out.coefficients_) c = expr::simplify(c);
    return out;
}

bool KForm::is_zero() const {
    for (const Expr& c : coefficients_) {
        if (!expr::is_zero(c)) return false;
    }
    return true;
}

KForm operator+(const KForm& a, const KForm& b) {
    if (a.degree() != b.degree()) throw std::invalid_argument("cannot add forms of different degree");
    KForm out(a.degree());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = expr::simplify(a[k] + b[k]);
    return out;
}

KForm operator-(const KForm& a, const KForm& b) { return a + Expr(-1) * b; }

KForm operator*(const Expr& s, const KForm& a) {
    KForm out(a.degree());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = expr::simplify(s * a[k]);
    return out;
}

// ---------------------------------------------------------------------------
// Surface

OdeSurface::OdeSurface(Expr f)
    : f_(expr::simplify(f)),
      fx_(expr::diff(f_, Var::x)),
      fy_(expr::diff(f_, Var::y)),
      fp_(expr::diff(f_, Var::p)) {
    // d eta^k (xi_i, xi_j) = -eta^k([xi_i, xi_j]) for the dual coframe.
    for (auto& form : d_eta_) form = KForm(2);
    for (std::size_t k = 0; k < 3; ++k) {
        const auto [i, j] = std::pair{KForm::basis_indices(2, k)[0], KForm::basis_indices(2, k)[1]};
        const auto bracket = frame_components(
            f_, coordinate_bracket(frame_coordinates(f_, FrameVector::xi(i + 1)),
                                   frame_coordinates(f_, FrameVector::xi(j + 1))));
        for (std::size_t m = 0; m < 3; ++m) d_eta_[m][k] = expr::simplify(-bracket[m]);
    }
}

OdeSurface make_surface(const Expr& f) { return OdeSurface(f); }

CoordinateVector frame_in_coordinates(const OdeSurface& s, int i) {
    auto v = frame_coordinates(s.f(), FrameVector::xi(i));
    for (Expr& c : v) c = expr::simplify(c);
    return v;
}

CoordinateVector coframe_in_coordinates(const OdeSurface& s, int i) {
    const Expr half = Expr::rational(1, 2);
    switch (i) {
        case 1: return {half, Expr(0), Expr(0)};
        case 2: return {expr::simplify(-half * expr::p), half, Expr(0)};
        case 3: return {expr::simplify(-half * s.f()), Expr(0), half};
        default: throw std::invalid_argument("coframe index must be in 1..3");
    }
}

CoordinateVector to_coordinates(const OdeSurface& s, const FrameVector& v) {
    auto out = frame_coordinates(s.f(), v);
    for (Expr& c : out) c = expr::simplify(c);
    return out;
}

FrameVector from_coordinates(const OdeSurface& s, const CoordinateVector& v) { return frame_components(s.f(), v); }

ExprMatrix metric_coordinate_matrix(const OdeSurface& s) {
    ExprMatrix g;
    for (int i = 1; i <= 3; ++i) {
        const auto eta = coframe_in_coordinates(s, i);
        for (std::size_t a = 0; a < 3; ++a) {
            for (std::size_t b = 0; b < 3; ++b) g[a][b] += eta[a] * eta[b];
        }
    }
    for (auto& row : g) {
        for (Expr& c : row) c = expr::simplify(c);
    }
    return g;
}

Expr inner(const FrameVector& a, const FrameVector& b) {
    return expr::simplify(a[0] * b[0] + a[1] * b[1] + a[2] * b[2]);
}

Expr directional_derivative(const OdeSurface& s, const FrameVector& v, const Expr& h) {
    return coordinate_derivative(frame_coordinates(s.f(), v), h);
}

// ---------------------------------------------------------------------------
// Exterior algebra

KForm wedge(const KForm& a, const KForm& b) {
    const int degree = a.degree() + b.degree();
    if (degree > 3) return KForm(3);
    KForm out(degree);
    std::vector<Expr> acc(out.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_literal_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_literal_zero()) continue;
            std::vector<int> idx = KForm::basis_indices(a.degree(), i);
            const auto rhs = KForm::basis_indices(b.degree(), j);
            idx.insert(idx.end(), rhs.begin(), rhs.end());
            const int sign = sort_sign(idx);
            if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) continue;
            acc[KForm::basis_position(idx)] += Expr(sign) * a[i] * b[j];
        }
    }
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = expr::simplify(acc[k]);
    return out;
}

KForm exterior_derivative(const OdeSurface& s, const KForm& a) {
    if (a.degree() >= 3) return KForm(3);
    const auto& d_eta = s.structure_equations();
    auto d_function = [&](const Expr& h) {
        KForm out(1);
        for (int i = 0; i < 3; ++i) {
            out[static_cast<std::size_t>(i)] = directional_derivative(s, FrameVector::xi(i + 1), h);
        }
        return out;
    };
    if (a.degree() == 0) return d_function(a[0]);

    KForm out(a.degree() + 1);
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].is_literal_zero()) continue;
        const auto idx = KForm::basis_indices(a.degree(), k);
        KForm basis_form(a.degree());
        basis_form[k] = Expr(1);
        // d(eta^I): Leibniz over the factors with alternating sign.
        KForm d_basis(a.degree() + 1);
        if (a.degree() == 1) {
            d_basis = d_eta[static_cast<std::size_t>(idx[0])];
        } else {
            const KForm first = KForm::eta(idx[0] + 1);
            const KForm second = KForm::eta(idx[1] + 1);
            d_basis = wedge(d_eta[static_cast<std::size_t>(idx[0])], second) -
                      wedge(first, d_eta[static_cast<std::size_t>(idx[1])]);
        }
        out = out + wedge(d_function(a[k]), basis_form) + a[k] * d_basis;
    }
    return out;
}

KForm interior_product(const FrameVector& v, const KForm& a) {
    if (a.degree() < 1) throw std::invalid_argument("interior product needs a form of degree >= 1");
    KForm out(a.degree() - 1);
    std::vector<Expr> acc(out.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        const auto idx = KForm::basis_indices(a.degree(), k);
        for (std::size_t m = 0; m < idx.size(); ++m) {
            std::vector<int> rest;
            for (std::size_t r = 0; r < idx.size(); ++r) {
                if (r != m) rest.push_back(idx[r]);
            }
            const Expr sign(m % 2 == 0 ? 1 : -1);
            acc[KForm::basis_position(rest)] += sign * v[static_cast<std::size_t>(idx[m])] * a[k];
        }
    }
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = expr::simplify(acc[k]);
    return out;
}

Expr evaluate(const KForm& a, std::span<const FrameVector> vectors) {
    if (vectors.size() != static_cast<std::size_t>(a.degree())) {
        throw std::invalid_argument("number of vectors must match the form degree");
    }
    KForm current = a;
    for (const FrameVector& v : vectors) current = interior_product(v, current);
    return current[0];
}

FrameVector sharp(const KForm& a) {
    if (a.degree() != 1) throw std::invalid_argument("sharp expects a 1-form");
    return FrameVector{{a[0], a[1], a[2]}}.simplified();
}

KForm flat(const FrameVector& v) { return KForm(1, {v[0], v[1], v[2]}).simplified(); }

FrameVector cross(const FrameVector& a, const FrameVector& b) {
    return FrameVector{{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]}}.simplified();
}

FrameVector gradient(const OdeSurface& s, const Expr& h) {
    FrameVector out;
    for (int i = 0; i < 3; ++i) out[static_cast<std::size_t>(i)] = directional_derivative(s, FrameVector::xi(i + 1), h);
    return out;
}

FrameVector lie_bracket(const OdeSurface& s, const FrameVector& a, const FrameVector& b) {
    return frame_components(s.f(), coordinate_bracket(frame_coordinates(s.f(), a), frame_coordinates(s.f(), b)));
}

std::array<KForm, 3> expected_structure_equations(const OdeSurface& s) {
    return {KForm(2),
            Expr(2) * KForm::basis({1, 3}),
            Expr(2) * s.fy() * KForm::basis({1, 2}) + Expr(2) * s.fp() * KForm::basis({1, 3})};
}

ResidualReport verify_structure_equations(const OdeSurface& s) {
    ResidualReport report;
    const auto expected = expected_structure_equations(s);
    for (int i = 0; i < 3; ++i) {
        const KForm derived = exterior_derivative(s, KForm::eta(i + 1));
        const auto& want = expected[static_cast<std::size_t>(i)];
        for (std::size_t k = 0; k < 3; ++k) {
            report.add("d(eta" + std::to_string(i + 1) + ")", KForm::basis_name(2, k), derived[k] - want[k]);
        }
    }
    return report;
}

bool has_constant_structure(const OdeSurface& s) {
    for (const KForm& form : s.structure_equations()) {
        for (const Expr& c : form.coefficients()) {
            for (Var v : kCoords) {
                if (expr::depends_on(c, v)) return false;
            }
        }
    }
    return true;
}

}  // namespace sigma::geometry
