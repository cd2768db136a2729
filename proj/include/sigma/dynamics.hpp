#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "sigma/geometry.hpp"

// Numerical flows on the ODE manifold: Hamiltonian trajectories in t and
// solution 2-graphs x -> (x, y(x), y'(x)).
namespace sigma::dynamics {

using expr::Expr;
using expr::Point;
using geometry::FrameVector;
using geometry::OdeSurface;

enum class Method { rk4, rk45 };

struct IntegratorConfig {
    Method method = Method::rk4;
    double dt = 1e-3;        // fixed step, or initial step for rk45
    double rel_tol = 1e-10;  // rk45 only
    double abs_tol = 1e-12;  // rk45 only
    double t_end = 1.0;
    double blow_up = 1e12;
    double min_step = 1e-14;
    std::size_t max_steps = 10'000'000;  // attempted steps, accepted or not
};

// Throws std::invalid_argument for non-positive or non-finite settings.
void validate(const IntegratorConfig& cfg, double t0);

enum class Status { ok, blow_up, domain_error, step_underflow, step_limit };

[[nodiscard]] const char* to_string(Status s);

struct Monitor {
    std::string name;
    std::vector<double> values;
};

struct Trajectory {
    std::string parameter = "t";  // "x" for 2-graphs
    std::vector<double> t;
    std::vector<Point> points;
    std::vector<Monitor> monitors;  // aligned with samples
    Status status = Status::ok;
    std::string message;

    [[nodiscard]] std::size_t size() const { return t.size(); }
    [[nodiscard]] const Point& back() const { return points.back(); }
    // Null when absent.
    [[nodiscard]] const Monitor* monitor(const std::string& name) const;
    void set_monitor(std::string name, std::vector<double> values);
};

using State = std::array<double, 3>;
using Rhs = std::function<State(double, const State&)>;

// Generic driver for the 3-dimensional systems used here. Samples every
// accepted step, starting with (t0, q0) and ending at cfg.t_end unless the
// run stops early with a non-ok status.
[[nodiscard]] Trajectory integrate(const Rhs& rhs, double t0, const State& q0, const IntegratorConfig& cfg);

// xdot = -4 H_y, ydot = 4 (H_x + f H_p), pdot = -4 f H_y, with an "H" monitor.
[[nodiscard]] Trajectory integrate_hamiltonian(const OdeSurface& s, const Expr& H, const Point& q0,
                                               const IntegratorConfig& cfg);

// |nabla_v v| in the frame at every sample; NaN where v is not evaluable.
[[nodiscard]] std::vector<double> geodesic_residual(const OdeSurface& s, const FrameVector& v,
                                                    const Trajectory& trajectory);

// y' = p, p' = f in the parameter x from x0 to cfg.t_end, with pullback
// monitors |y' - p| and |p' - f| from finite differences of the samples.
[[nodiscard]] Trajectory integrate_2graph(const OdeSurface& s, double x0, double y0, double p0,
                                          const IntegratorConfig& cfg);

struct ConservationReport {
    double max_drift = 0.0;
    std::vector<double> drift_series;
};

// Throws std::invalid_argument on an empty trajectory.
[[nodiscard]] ConservationReport conservation_report(const Trajectory& trajectory, const Expr& H);

// Header t,x,y,p then one column per monitor; 17 significant digits. The
// parameter column is omitted for 2-graphs, where it equals x.
void write_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace sigma::dynamics
