#include "sigma/contact.hpp"

namespace sigma::contact {

using geometry::inner;
using geometry::lie_bracket;

namespace {

std::string frame_name(std::size_t i) { return "xi" + std::to_string(i + 1); }

std::string pair_name(std::size_t i, std::size_t j) { return "(" + frame_name(i) + "," + frame_name(j) + ")"; }

}  // namespace

EndoField EndoField::identity() {
    EndoField out;
    for (std::size_t i = 0; i < 3; ++i) out.m[i][i] = Expr(1);
    return out;
}

EndoField EndoField::outer(const KForm& a, const FrameVector& v) {
    EndoField out;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) out.m[i][j] = expr::simplify(v[i] * a[j]);
    }
    return out;
}

EndoField EndoField::from_columns(const std::array<FrameVector, 3>& columns) {
    EndoField out;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) out.m[i][j] = columns[j][i];
    }
    return out;
}

FrameVector EndoField::operator()(const FrameVector& v) const {
    FrameVector out;
    for (std::size_t i = 0; i < 3; ++i) out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
    return out.simplified();
}

FrameVector EndoField::column(int j) const {
    const auto k = static_cast<std::size_t>(j);
    return FrameVector{{m[0][k], m[1][k], m[2][k]}};
}

Expr EndoField::trace() const { return expr::simplify(m[0][0] + m[1][1] + m[2][2]); }

EndoField EndoField::simplified() const {
    EndoField out = *this;
    for (auto& row : out.m) {
        for (Expr& c : row) c = expr::simplify(c);
    }
    return out;
}

bool EndoField::is_zero() const {
    for (const auto& row : m) {
        for (const Expr& c : row) {
            if (!expr::is_zero(c)) return false;
        }
    }
    return true;
}

EndoField operator*(const EndoField& a, const EndoField& b) {
    EndoField out;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            for (std::size_t k = 0; k < 3; ++k) out.m[i][j] += a.m[i][k] * b.m[k][j];
        }
    }
    return out.simplified();
}

EndoField operator+(const EndoField& a, const EndoField& b) {
    EndoField out;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) out.m[i][j] = a.m[i][j] + b.m[i][j];
    }
    return out.simplified();
}

EndoField operator-(const EndoField& a, const EndoField& b) { return a + Expr(-1) * b; }

EndoField operator*(const Expr& s, const EndoField& a) {
    EndoField out;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) out.m[i][j] = s * a.m[i][j];
    }
    return out.simplified();
}

EndoField phi(const OdeSurface&) {
    return EndoField::outer(KForm::eta(3), FrameVector::xi(1)) -
           EndoField::outer(KForm::eta(1), FrameVector::xi(3));
}

FrameVector phi_apply(const OdeSurface& s, const FrameVector& v) { return phi(s)(v); }

EndoField lie_derivative(const OdeSurface& s, const FrameVector& along, const EndoField& t) {
    std::array<FrameVector, 3> columns;
    for (int j = 0; j < 3; ++j) {
        const FrameVector xi_j = FrameVector::xi(j + 1);
        columns[static_cast<std::size_t>(j)] = lie_bracket(s, along, t(xi_j)) - t(lie_bracket(s, along, xi_j));
    }
    return EndoField::from_columns(columns);
}

FrameTensor lie_derivative_metric(const OdeSurface& s, const FrameVector& along) {
    std::array<FrameVector, 3> brackets;
    for (int j = 0; j < 3; ++j) brackets[static_cast<std::size_t>(j)] = lie_bracket(s, along, FrameVector::xi(j + 1));
    FrameTensor out;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            // g(xi_i, xi_j) is constant, so the directional term vanishes.
            out[i][j] = expr::simplify(-inner(brackets[i], FrameVector::xi(static_cast<int>(j) + 1)) -
                                       inner(FrameVector::xi(static_cast<int>(i) + 1), brackets[j]));
        }
    }
    return out;
}

FrameTensor lie_derivative_metric(const OdeSurface& s) { return lie_derivative_metric(s, FrameVector::xi(2)); }

EndoField h_tensor(const OdeSurface& s, const EndoField& phi_field) {
    return Expr::rational(1, 2) * lie_derivative(s, FrameVector::xi(2), phi_field);
}

EndoField h_tensor(const OdeSurface& s) { return h_tensor(s, phi(s)); }

EndoField h_closed_form(const OdeSurface& s) {
    return Expr(-1) * s.fy() *
           (EndoField::outer(KForm::eta(1), FrameVector::xi(1)) - EndoField::outer(KForm::eta(3), FrameVector::xi(3)));
}

FrameTensor lie_derivative_metric_closed_form(const OdeSurface& s) {
    FrameTensor out;
    const Expr c = expr::simplify(Expr(-2) * s.fy());
    out[0][2] = c;
    out[2][0] = c;
    return out;
}

Classification classify(const OdeSurface& s) {
    Classification out;
    out.witness = s.fy();
    bool killing = true;
    for (const auto& row : lie_derivative_metric(s)) {
        for (const Expr& c : row) killing = killing && expr::is_zero(c);
    }
    out.k_contact = killing;
    out.sasakian = killing;
    return out;
}

ResidualReport verify_contact_identities(const OdeSurface& s, const EndoField& phi_field) {
    ResidualReport report;
    const KForm eta2 = KForm::eta(2);
    const FrameVector xi2 = FrameVector::xi(2);
    const EndoField square = phi_field * phi_field + EndoField::identity() - EndoField::outer(eta2, xi2);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) report.add("phi^2 + id - eta2 (x) xi2", pair_name(i, j), square.m[i][j]);
    }

    const KForm d_eta2 = geometry::exterior_derivative(s, eta2);
    for (std::size_t i = 0; i < 3; ++i) {
        const FrameVector xi_i = FrameVector::xi(static_cast<int>(i) + 1);
        for (std::size_t j = 0; j < 3; ++j) {
            const FrameVector xi_j = FrameVector::xi(static_cast<int>(j) + 1);
            const Expr eta_i = xi_i[1];
            const Expr eta_j = xi_j[1];
            report.add("g(phi X, phi Y) - g(X,Y) + eta2(X) eta2(Y)", pair_name(i, j),
                       inner(phi_field(xi_i), phi_field(xi_j)) - inner(xi_i, xi_j) + eta_i * eta_j);
            const std::array<FrameVector, 2> args = {xi_i, xi_j};
            report.add("(1/2) d eta2(X,Y) - g(X, phi Y)", pair_name(i, j),
                       Expr::rational(1, 2) * geometry::evaluate(d_eta2, args) - inner(xi_i, phi_field(xi_j)));
        }
    }

    const FrameVector phi_xi2 = phi_field(xi2);
    for (std::size_t k = 0; k < 3; ++k) {
        report.add("phi(xi2)", frame_name(k), phi_xi2[k]);
        report.add("eta2 o phi", "eta" + std::to_string(k + 1), phi_field.m[1][k]);
    }

    const EndoField h = h_tensor(s, phi_field);
    const EndoField closed = h_closed_form(s);
    const EndoField anti = h * phi_field + phi_field * h;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            report.add("h - closed form", pair_name(i, j), h.m[i][j] - closed.m[i][j]);
            report.add("g(hX,Y) - g(X,hY)", pair_name(i, j), h.m[j][i] - h.m[i][j]);
            report.add("h o phi + phi o h", pair_name(i, j), anti.m[i][j]);
        }
    }
    report.add("tr h", "scalar", h.trace());
    const FrameVector h_xi2 = h(xi2);
    for (std::size_t k = 0; k < 3; ++k) report.add("h(xi2)", frame_name(k), h_xi2[k]);

    const FrameTensor lg = lie_derivative_metric(s);
    const FrameTensor lg_closed = lie_derivative_metric_closed_form(s);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            report.add("L_xi2 g - closed form", pair_name(i, j), lg[i][j] - lg_closed[i][j]);
        }
    }
    return report;
}

ResidualReport verify_contact_identities(const OdeSurface& s) { return verify_contact_identities(s, phi(s)); }

}  // namespace sigma::contact
