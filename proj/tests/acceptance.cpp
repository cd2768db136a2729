// Acceptance runner: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sigma/connection.hpp"
#include "sigma/contact.hpp"
#include "sigma/dynamics.hpp"
#include "sigma/hamiltonian.hpp"
#include "support/corpus.hpp"
#include "support/flows.hpp"
#include "support/process.hpp"

using namespace sigma;
using expr::Expr;
using expr::Var;
using expr::equivalent;
using expr::parse;
using geometry::FrameVector;
using geometry::KForm;
using geometry::make_surface;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (pass) detail << "first failure: " << what << "; ";
            pass = false;
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Expr drop_y(const Expr& e) { return expr::substitute(e, Var::y, Expr(0)); }

bool same(const FrameVector& a, const FrameVector& b) { return (a - b).is_zero(); }
bool same(const KForm& a, const KForm& b) { return (a - b).is_zero(); }

bool same(const geometry::ExprMatrix& a, const geometry::ExprMatrix& b) {
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            if (!expr::is_zero(a[i][j] - b[i][j])) return false;
        }
    }
    return true;
}

const std::vector<testing::CorpusEntry>& full_corpus() {
    static const auto c = testing::corpus();
    return c;
}

// 1. Structure equations over the full corpus.
void structure_equations(Outcome& o) {
    const auto start = Clock::now();
    std::size_t residuals = 0;
    for (const auto& e : full_corpus()) {
        const auto s = make_surface(e.f);
        const auto report = geometry::verify_structure_equations(s);
        residuals += report.entries().size();
        o.require(report.all_zero(), e.label);
        // Independent restatement of the expected forms.
        const auto& d = s.structure_equations();
        const KForm e13 = KForm::basis({1, 3});
        o.require(d[0].is_zero(), e.label + " d eta1");
        o.require(same(d[1], Expr(2) * e13), e.label + " d eta2");
        o.require(same(d[2], Expr(2) * s.fy() * KForm::basis({1, 2}) + Expr(2) * s.fp() * e13), e.label + " d eta3");
    }
    const double t = seconds_since(start);
    o.require(t < 10.0, "runtime");
    o.detail << full_corpus().size() << " f, " << residuals << " coefficient residuals, " << t << " s (limit 10 s)";
}

// 2. Connection identities and metric compatibility.
void connection_suite(Outcome& o) {
    std::mt19937_64 rng(20190603);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    double worst = 0.0;
    for (const auto& e : full_corpus()) {
        const auto s = make_surface(e.f);
        o.require(connection::verify_first_structure(s).all_zero(), e.label + " first structure");
        o.require(connection::verify_connection(s).all_zero(), e.label + " antisymmetry/torsion/table");
        const auto theta = connection::connection_forms(s);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) o.require((theta.theta(i, j) + theta.theta(j, i)).is_zero(), e.label);
        }
        const auto X = testing::random_frame_vector(rng);
        const auto Y = testing::random_frame_vector(rng);
        const auto Z = testing::random_frame_vector(rng);
        o.require(same(connection::covariant_derivative(s, X, Y) - connection::covariant_derivative(s, Y, X),
                       geometry::lie_bracket(s, X, Y)),
                  e.label + " torsion on random pair");
        const Expr lhs = geometry::directional_derivative(s, X, geometry::inner(Y, Z));
        const Expr rhs = geometry::inner(connection::covariant_derivative(s, X, Y), Z) +
                         geometry::inner(Y, connection::covariant_derivative(s, X, Z));
        for (int k = 0; k < 10; ++k) {
            const expr::Point q{u(rng), u(rng), u(rng)};
            const double r = std::abs(expr::eval(lhs, q) - expr::eval(rhs, q));
            worst = std::max(worst, r);
            o.require(r < 1e-9, e.label + " metric compatibility");
        }
    }
    o.detail << "max |X<Y,Z> - <nabla_X Y,Z> - <Y,nabla_X Z>| = " << worst << " (limit 1e-9, 10 points per f)";
}

// 3. Contact metric structure.
void contact_suite(Outcome& o) {
    int sasakian = 0;
    for (const auto& e : full_corpus()) {
        const auto s = make_surface(e.f);
        o.require(contact::verify_contact_identities(s).all_zero(), e.label + " identities");
        const auto xi1 = FrameVector::xi(1);
        const auto xi3 = FrameVector::xi(3);
        const auto oracle_h = Expr(-1) * s.fy() * (contact::EndoField::outer(KForm::eta(1), xi1) -
                                                   contact::EndoField::outer(KForm::eta(3), xi3));
        o.require((contact::h_tensor(s) - oracle_h).is_zero(), e.label + " h");
        geometry::ExprMatrix lg;
        for (auto& row : lg) row.fill(Expr(0));
        lg[0][2] = Expr(-2) * s.fy();
        lg[2][0] = Expr(-2) * s.fy();
        o.require(same(contact::lie_derivative_metric(s), lg), e.label + " L g");
        const bool fy_zero = expr::is_zero(s.fy());
        const auto c = contact::classify(s);
        o.require(c.sasakian == fy_zero, e.label + " classification");
        sasakian += c.sasakian ? 1 : 0;
    }
    o.detail << sasakian << " of " << full_corpus().size() << " classified Sasakian, matching f_y = 0 exactly";
}

// 4. Poisson structures.
void poisson_suite(Outcome& o) {
    std::mt19937_64 rng(20190604);
    int flips = 0, compat = 0, jacobi_only = 0;
    for (const auto& e : full_corpus()) {
        const auto s = make_surface(e.f);
        o.require(same(hamiltonian::poisson_one_form(s, hamiltonian::BiVector::xi12()), KForm::eta(3)),
                  e.label + " iota vol");
        o.require(equivalent(hamiltonian::jacobi_residual(s, KForm::eta(3)), Expr(2) * s.fy()), e.label + " 2 f_y");

        const Expr H = testing::random_polynomial(rng, 1, 2);
        const bool hy_zero = expr::is_zero(expr::diff(H, Var::y));
        const auto verdict = hamiltonian::omega2_poisson_check(s, H);
        o.require(verdict.poisson == hy_zero, e.label + " omega2 verdict on H");
        const auto verdict_xp = hamiltonian::omega2_poisson_check(s, drop_y(H));
        o.require(verdict_xp.poisson, e.label + " omega2 verdict on H(x,p)");
        flips += verdict.poisson != verdict_xp.poisson ? 1 : 0;
        jacobi_only += !verdict.poisson && verdict.jacobi_zero ? 1 : 0;

        // H = H(x, p): three representations of v, and v(H) = 0.
        const Expr hxp = drop_y(H) + expr::x;
        const auto v = hamiltonian::hamiltonian_field(s, hamiltonian::BiVector::xi12(), hxp);
        o.require(same(v, hamiltonian::hamiltonian_field_cross(s, hamiltonian::BiVector::xi12(), hxp)),
                  e.label + " cross");
        const auto coords = geometry::to_coordinates(s, v);
        const auto motion = hamiltonian::equations_of_motion(s, hxp);
        for (std::size_t k = 0; k < 3; ++k) o.require(expr::is_zero(coords[k] - motion[k]), e.label + " coordinates");
        o.require(expr::is_zero(geometry::directional_derivative(s, v, hxp)), e.label + " v(H)");

        // Compatibility of eta3 + eta on the f_y = 0 slice, where the pair is defined.
        const auto sx = make_surface(drop_y(e.f));
        const auto pair = hamiltonian::bihamiltonian_pair(sx, hxp);
        o.require(pair.checks.all_zero(), e.label + " pair checks");
        o.require(pair.compatible, e.label + " compatibility");
        compat += pair.compatible ? 1 : 0;
    }
    o.detail << flips << " verdicts flip from H to H|_{y=0}; " << jacobi_only
             << " H with H_y != 0 still pass the raw Jacobi test; " << compat
             << " compatible pairs on y-free projections (f_y = 0, H_y = 0)";
}

// 5. Heisenberg coframe and the Reeb bi-Hamiltonian structure.
void heisenberg_suite(Outcome& o) {
    for (const char* text : {"0", "x", "x^2"}) {
        const auto s = make_surface(parse(text));
        const auto& d = s.structure_equations();
        o.require(d[0].is_zero() && same(d[1], Expr(2) * KForm::basis({1, 3})) && d[2].is_zero(),
                  std::string(text) + " structure constants");
        o.require(hamiltonian::is_heisenberg(s), std::string(text) + " flag");
        const auto r = hamiltonian::reeb_bihamiltonian(s);
        o.require(r.accepted, std::string(text) + " accepted");
        o.require(equivalent(r.H, parse("x/2")), std::string(text) + " H = x/2");
        const auto xi2 = FrameVector::xi(2);
        o.require(same(geometry::cross(FrameVector::xi(3), geometry::gradient(s, r.H)), xi2),
                  std::string(text) + " xi3 x grad H");
        o.require(same(geometry::cross(r.J2, geometry::gradient(s, r.H1)), xi2), std::string(text) + " J2 x grad H1");
        o.require(r.represents_reeb, std::string(text) + " report flag");
    }
    o.require(!hamiltonian::reeb_bihamiltonian(make_surface(parse("p"))).accepted, "p rejected");
    o.detail << "f in {0, x, x^2}; negative control f = p rejected";
}

// 6. Normal-bundle curvature and Chern triviality.
void chern_suite(Outcome& o) {
    int on_slice = 0, off_slice = 0;
    auto check_curvature = [&](const Expr& f, const std::string& label) {
        const auto s = make_surface(f);
        const auto n = connection::normal_connection(s);
        const Expr expected = Expr(-4) * expr::diff(s.fx() + f * s.fp(), Var::p);
        const KForm d_omega = geometry::exterior_derivative(s, n.omega12);
        o.require(same(d_omega, n.curvature), label + " curvature is d omega12");
        if (expr::is_zero(s.fy())) {
            ++on_slice;
            o.require(equivalent(n.curvature_on_bundle, expected), label + " closed form");
        } else {
            // Off the slice the bundle coefficient carries -4 p f_py in addition.
            ++off_slice;
            o.require(equivalent(n.curvature_on_bundle,
                                 expected + Expr(-4) * expr::p * expr::diff(s.fp(), Var::y)),
                      label + " closed form off slice");
        }
    };
    for (const auto& e : full_corpus()) {
        check_curvature(e.f, e.label);
        check_curvature(drop_y(e.f), e.label + "|y=0");
    }
    for (const char* text : {"0", "x^2", "x", "2*x + 3"}) {
        o.require(connection::chern_trivial(make_surface(parse(text))).trivial, std::string(text) + " trivial");
    }
    for (const char* text : {"p", "x*p", "x + p^2"}) {
        o.require(!connection::chern_trivial(make_surface(parse(text))).trivial, std::string(text) + " nontrivial");
    }
    o.detail << on_slice << " f with f_y = 0 match -4 (f_x + f f_p)_p exactly; " << off_slice
             << " with f_y != 0 differ by -4 p f_py";
}

dynamics::IntegratorConfig rk4(double dt, double t_end) {
    dynamics::IntegratorConfig cfg;
    cfg.dt = dt;
    cfg.t_end = t_end;
    return cfg;
}

double max_of(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::isnan(x) ? x : std::max(m, x);
    return m;
}

// 7. Numerical flows.
void dynamics_suite(Outcome& o) {
    const auto start = Clock::now();

    const auto flows = testing::flow_corpus(10);
    double drift = 0.0;
    for (const auto& c : flows.admitted) {
        const auto tr = dynamics::integrate_hamiltonian(make_surface(c.f), c.H, c.q0, rk4(1e-3, 1.0));
        o.require(tr.status == dynamics::Status::ok, "flow status");
        drift = std::max(drift, dynamics::conservation_report(tr, c.H).max_drift);
    }
    o.require(drift <= 1e-6, "H drift");
    o.require(flows.admitted.size() == 10, "corpus size");

    double geodesic = 0.0;
    int geodesic_cases = 0;
    for (const auto& e : full_corpus()) {
        const auto s = make_surface(drop_y(e.f));
        const FrameVector v = Expr(2) * (s.fx() + s.f() * s.fp()) * FrameVector::xi(2);
        const auto tr = dynamics::integrate_hamiltonian(s, s.f(), {0.1, 0.2, 0.3}, rk4(1e-3, 1.0));
        o.require(tr.status == dynamics::Status::ok, e.label + " geodesic flow status");
        const double r = max_of(dynamics::geodesic_residual(s, v, tr));
        o.require(r <= 1e-7, e.label + " geodesic residual");
        geodesic = std::max(geodesic, r);
        ++geodesic_cases;
    }

    double graph = 0.0;
    const auto line = dynamics::integrate_2graph(make_surface(Expr(0)), 0, 0, 1, rk4(1e-4, 2.0));
    graph = std::max(graph, std::abs(line.back().y - 2.0));
    const auto parabola = dynamics::integrate_2graph(make_surface(Expr(1)), 0, 0, 0, rk4(1e-4, 1.0));
    graph = std::max(graph, std::abs(parabola.back().y - 0.5));
    const auto sine = dynamics::integrate_2graph(make_surface(parse("-y")), 0, 0, 1, rk4(1e-4, 3.0));
    graph = std::max({graph, std::abs(sine.back().y - std::sin(3.0)), std::abs(sine.back().p - std::cos(3.0))});
    o.require(graph <= 1e-8, "2-graph closed forms");

    const auto s = make_surface(parse("-y"));
    const Expr H = parse("y^2/2 + p^2/2");
    const expr::Point q0{0.0, 0.3, 0.2};
    const auto ref = dynamics::integrate_hamiltonian(s, H, q0, testing::reference_config(1.0));
    auto err = [&](double dt) {
        const auto q = dynamics::integrate_hamiltonian(s, H, q0, rk4(dt, 1.0)).back();
        const auto& r = ref.back();
        return std::max({std::abs(q.x - r.x), std::abs(q.y - r.y), std::abs(q.p - r.p)});
    };
    const double factor = err(0.05) / err(0.025);
    o.require(factor >= 12.0 && factor <= 20.0, "rk4 convergence factor");

    const double t = seconds_since(start);
    o.require(t < 30.0, "runtime");
    o.detail << "H drift " << drift << " (limit 1e-6, " << flows.admitted.size() << " systems, " << flows.rejected
             << " rejected by admission); geodesic " << geodesic << " (limit 1e-7, " << geodesic_cases
             << " f(x,p)); 2-graph " << graph << " (limit 1e-8); convergence factor " << factor
             << " (range [12, 20]); " << t << " s (limit 30 s)";
}

// 8. CLI determinism and exit codes.
void cli_suite(Outcome& o) {
    const std::string bin = testing::shell_quote(SIGMA_FORGE_BINARY) + " ";
    const auto a = testing::run_command(bin + "report --f 'x*p'");
    const auto b = testing::run_command(bin + "report --f 'x*p'");
    o.require(a.exit_code == 0 && !a.out.empty(), "report runs");
    o.require(a.out == b.out, "byte-identical");

    const std::vector<std::pair<std::string, int>> controls = {
        {"classify --f 'x + p^2'", 0},
        {"classify --f 'x +'", 2},
        {"report", 2},
        {"flow --f 0 --H y --q0 0,0 --t 1", 2},
        {"flow --f 0 --H y --q0 0,0,0 --t 0", 2},
        {"report --f 'x*p' --inject-fault", 3},
        {"solve --f 'p^2' --q0 0,0,1 --to 2", 4},
    };
    for (const auto& [args, code] : controls) {
        const int got = testing::run_command(bin + args).exit_code;
        o.require(got == code, args + " -> " + std::to_string(got));
    }
    o.require(testing::run_command("SIGMA_FORGE_SEED=banana " + bin + "classify --f x").exit_code == 2, "bad seed");
    o.detail << a.out.size() << " bytes identical across runs; " << controls.size() + 1 << " exit-code controls";
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
        {"structure equations", structure_equations},
        {"connection", connection_suite},
        {"contact", contact_suite},
        {"poisson", poisson_suite},
        {"heisenberg/reeb", heisenberg_suite},
        {"chern", chern_suite},
        {"dynamics", dynamics_suite},
        {"cli determinism", cli_suite},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.str().c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
