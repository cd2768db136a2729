#include "sigma/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "sigma/connection.hpp"
#include "sigma/hamiltonian.hpp"

namespace sigma::dynamics {

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

State axpy(const State& y, double h, const State& k) { return {y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2]}; }

bool escaped(const State& q, double bound) {
    return std::any_of(q.begin(), q.end(), [bound](double c) { return !std::isfinite(c) || std::abs(c) > bound; });
}

Point to_point(const State& q) { return {q[0], q[1], q[2]}; }

State rk4_step(const Rhs& f, double t, const State& y, double h) {
    const State k1 = f(t, y);
    const State k2 = f(t + h / 2, axpy(y, h / 2, k1));
    const State k3 = f(t + h / 2, axpy(y, h / 2, k2));
    const State k4 = f(t + h, axpy(y, h, k3));
    State out;
    for (std::size_t i = 0; i < 3; ++i) out[i] = y[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    return out;
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

struct Dp45Result {
    State y;
    State k_last;
    double error = 0.0;
};

Dp45Result dp45_step(const Rhs& f, double t, const State& y, const State& k1, double h, const IntegratorConfig& cfg) {
    auto stage = [&](std::initializer_list<std::pair<double, const State*>> terms) {
        State out = y;
        for (const auto& [a, k] : terms) {
            for (std::size_t i = 0; i < 3; ++i) out[i] += h * a * (*k)[i];
        }
        return out;
    };
    const State k2 = f(t + c2 * h, stage({{a21, &k1}}));
    const State k3 = f(t + c3 * h, stage({{a31, &k1}, {a32, &k2}}));
    const State k4 = f(t + c4 * h, stage({{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State k5 = f(t + c5 * h, stage({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const State k6 = f(t + h, stage({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const State y5 = stage({{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const State k7 = f(t + h, y5);
    double err = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double scale = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
        err = std::max(err, std::abs(e) / scale);
    }
    return {y5, k7, err};
}

void push(Trajectory& out, double t, const State& q) {
    out.t.push_back(t);
    out.points.push_back(to_point(q));
}

void stop(Trajectory& out, Status status, std::string message) {
    out.status = status;
    out.message = std::move(message);
}

void run_rk4(const Rhs& f, double t0, State y, const IntegratorConfig& cfg, Trajectory& out) {
    const double span = cfg.t_end - t0;
    const auto steps = static_cast<long long>(std::ceil(span / cfg.dt - 1e-9));
    if (static_cast<double>(steps) > static_cast<double>(cfg.max_steps)) {
        stop(out, Status::step_limit, "span needs " + std::to_string(steps) + " steps");
        return;
    }
    double t = t0;
    for (long long k = 1; k <= steps; ++k) {
        const double t_next = k == steps ? cfg.t_end : t0 + static_cast<double>(k) * cfg.dt;
        const State next = rk4_step(f, t, y, t_next - t);
        if (escaped(next, cfg.blow_up)) {
            stop(out, Status::blow_up, "state left |q| <= " + format_double(cfg.blow_up) + " near t = " +
                                           format_double(t_next));
            return;
        }
        y = next;
        t = t_next;
        push(out, t, y);
    }
}

void run_rk45(const Rhs& f, double t0, State y, const IntegratorConfig& cfg, Trajectory& out) {
    double t = t0;
    double h = std::min(cfg.dt, cfg.t_end - t0);
    State k1 = f(t, y);
    std::size_t attempts = 0;
    while (t < cfg.t_end) {
        if (++attempts > cfg.max_steps) {
            stop(out, Status::step_limit, "step budget exhausted near t = " + format_double(t));
            return;
        }
        const double remaining = cfg.t_end - t;
        const bool last = h >= remaining;
        const double step = last ? remaining : h;
        if (step < cfg.min_step * std::max(1.0, std::abs(t))) {
            stop(out, Status::step_underflow, "step size underflow near t = " + format_double(t));
            return;
        }
        Dp45Result r;
        try {
            r = dp45_step(f, t, y, k1, step, cfg);
        } catch (const expr::OverflowError&) {
            // A trial stage overflowed; retry with a smaller step.
            h = step * 0.2;
            continue;
        }
        const double factor =
            r.error == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(r.error, -0.2), 0.2, 5.0);
        if (!std::isfinite(r.error) || r.error > 1.0) {
            h = step * (std::isfinite(r.error) ? factor : 0.2);
            continue;
        }
        if (escaped(r.y, cfg.blow_up)) {
            stop(out, Status::blow_up, "state left |q| <= " + format_double(cfg.blow_up) + " near t = " +
                                           format_double(t + step));
            return;
        }
        t = last ? cfg.t_end : t + step;
        y = r.y;
        k1 = r.k_last;
        push(out, t, y);
        h = step * factor;
    }
}

// f evaluated with the domain error turned into a status by the caller.
State evaluate3(const std::array<Expr, 3>& rhs, const Point& q) {
    return {expr::eval(rhs[0], q), expr::eval(rhs[1], q), expr::eval(rhs[2], q)};
}

// First derivative of samples u(t) on a possibly non-uniform grid:
// three-point formulas, central in the interior and one-sided at the ends.
std::vector<double> sampled_derivative(const std::vector<double>& t, const std::vector<double>& u) {
    const std::size_t n = t.size();
    std::vector<double> out(n, std::numeric_limits<double>::quiet_NaN());
    if (n < 3) {
        if (n == 2) out[0] = out[1] = (u[1] - u[0]) / (t[1] - t[0]);
        return out;
    }
    auto three_point = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t at) {
        // Derivative at t[at] of the quadratic through (a, b, c).
        const double ta = t[a], tb = t[b], tc = t[c], x = t[at];
        const double da = (2 * x - tb - tc) / ((ta - tb) * (ta - tc));
        const double db = (2 * x - ta - tc) / ((tb - ta) * (tb - tc));
        const double dc = (2 * x - ta - tb) / ((tc - ta) * (tc - tb));
        return da * u[a] + db * u[b] + dc * u[c];
    };
    out[0] = three_point(0, 1, 2, 0);
    for (std::size_t i = 1; i + 1 < n; ++i) out[i] = three_point(i - 1, i, i + 1, i);
    out[n - 1] = three_point(n - 3, n - 2, n - 1, n - 1);
    return out;
}

}  // namespace

void validate(const IntegratorConfig& cfg, double t0) {
    auto positive = [](double v) { return std::isfinite(v) && v > 0; };
    if (!positive(cfg.dt)) throw std::invalid_argument("step size must be positive and finite");
    if (!std::isfinite(cfg.t_end) || !(cfg.t_end > t0)) throw std::invalid_argument("integration span must be positive");
    if (cfg.method == Method::rk45 && (!positive(cfg.rel_tol) || !positive(cfg.abs_tol))) {
        throw std::invalid_argument("tolerances must be positive");
    }
    if (!positive(cfg.blow_up) || !positive(cfg.min_step) || cfg.max_steps == 0) {
        throw std::invalid_argument("guards must be positive");
    }
}

const char* to_string(Status s) {
    switch (s) {
        case Status::ok: return "ok";
        case Status::blow_up: return "blow_up";
        case Status::domain_error: return "domain_error";
        case Status::step_underflow: return "step_underflow";
        case Status::step_limit: return "step_limit";
    }
    return "unknown";
}

const Monitor* Trajectory::monitor(const std::string& name) const {
    for (const auto& m : monitors) {
        if (m.name == name) return &m;
    }
    return nullptr;
}

void Trajectory::set_monitor(std::string name, std::vector<double> values) {
    for (auto& m : monitors) {
        if (m.name == name) {
            m.values = std::move(values);
            return;
        }
    }
    monitors.push_back({std::move(name), std::move(values)});
}

Trajectory integrate(const Rhs& rhs, double t0, const State& q0, const IntegratorConfig& cfg) {
    validate(cfg, t0);
    Trajectory out;
    if (escaped(q0, cfg.blow_up)) {
        stop(out, Status::blow_up, "initial state out of bounds");
        return out;
    }
    push(out, t0, q0);
    try {
        if (cfg.method == Method::rk4) {
            run_rk4(rhs, t0, q0, cfg, out);
        } else {
            run_rk45(rhs, t0, q0, cfg, out);
        }
    } catch (const expr::OverflowError& e) {
        stop(out, Status::blow_up, e.what());
    } catch (const expr::DomainError& e) {
        stop(out, Status::domain_error, e.what());
    }
    return out;
}

Trajectory integrate_hamiltonian(const OdeSurface& s, const Expr& H, const Point& q0, const IntegratorConfig& cfg) {
    const auto motion = hamiltonian::equations_of_motion(s, H);
    const Rhs rhs = [&motion](double, const State& q) { return evaluate3(motion, to_point(q)); };
    Trajectory out;
    try {
        out = integrate(rhs, 0.0, {q0.x, q0.y, q0.p}, cfg);
    } catch (const expr::DomainError& e) {
        stop(out, Status::domain_error, e.what());
        return out;
    }
    std::vector<double> h_values;
    h_values.reserve(out.size());
    for (const Point& q : out.points) {
        try {
            h_values.push_back(expr::eval(H, q));
        } catch (const expr::DomainError&) {
            h_values.push_back(std::numeric_limits<double>::quiet_NaN());
        }
    }
    out.set_monitor("H", std::move(h_values));
    return out;
}

std::vector<double> geodesic_residual(const OdeSurface& s, const FrameVector& v, const Trajectory& trajectory) {
    const FrameVector acceleration = connection::covariant_derivative(s, v, v);
    std::vector<double> out;
    out.reserve(trajectory.size());
    for (const Point& q : trajectory.points) {
        try {
            const double a = expr::eval(acceleration[0], q);
            const double b = expr::eval(acceleration[1], q);
            const double c = expr::eval(acceleration[2], q);
            out.push_back(std::sqrt(a * a + b * b + c * c));
        } catch (const expr::DomainError&) {
            out.push_back(std::numeric_limits<double>::quiet_NaN());
        }
    }
    return out;
}

Trajectory integrate_2graph(const OdeSurface& s, double x0, double y0, double p0, const IntegratorConfig& cfg) {
    const Expr f = s.f();
    const Rhs rhs = [&f](double x, const State& q) {
        // q = (x, y, p); x advances with unit speed.
        return State{1.0, q[2], expr::eval(f, Point{x, q[1], q[2]})};
    };
    Trajectory out = integrate(rhs, x0, {x0, y0, p0}, cfg);
    out.parameter = "x";

    std::vector<double> ys, ps, fs;
    for (const Point& q : out.points) {
        ys.push_back(q.y);
        ps.push_back(q.p);
        try {
            fs.push_back(expr::eval(f, q));
        } catch (const expr::DomainError&) {
            fs.push_back(std::numeric_limits<double>::quiet_NaN());
        }
    }
    const auto dy = sampled_derivative(out.t, ys);
    const auto dp = sampled_derivative(out.t, ps);
    std::vector<double> r2(out.size()), r3(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        r2[i] = std::abs(dy[i] - ps[i]);
        r3[i] = std::abs(dp[i] - fs[i]);
    }
    out.set_monitor("pullback_dy_minus_p", std::move(r2));
    out.set_monitor("pullback_dp_minus_f", std::move(r3));
    return out;
}

ConservationReport conservation_report(const Trajectory& trajectory, const Expr& H) {
    if (trajectory.size() == 0) throw std::invalid_argument("empty trajectory");
    ConservationReport out;
    const double h0 = expr::eval(H, trajectory.points.front());
    for (const Point& q : trajectory.points) {
        const double drift = std::abs(expr::eval(H, q) - h0);
        out.drift_series.push_back(drift);
        out.max_drift = std::max(out.max_drift, drift);
    }
    return out;
}

void write_csv(std::ostream& out, const Trajectory& trajectory) {
    // A 2-graph is parametrized by x itself, so the parameter column is dropped.
    const bool own_column = trajectory.parameter != "x";
    if (own_column) out << trajectory.parameter << ',';
    out << "x,y,p";
    for (const auto& m : trajectory.monitors) out << ',' << m.name;
    out << '\n';
    for (std::size_t i = 0; i < trajectory.size(); ++i) {
        const Point& q = trajectory.points[i];
        if (own_column) out << format_double(trajectory.t[i]) << ',';
        out << format_double(q.x) << ',' << format_double(q.y) << ',' << format_double(q.p);
        for (const auto& m : trajectory.monitors) out << ',' << format_double(m.values[i]);
        out << '\n';
    }
}

}  // namespace sigma::dynamics
