// sigma_forge: classify an ODE y'' = f(x, y, p), emit its geometric report,
// run Hamiltonian flows and solve for 2-graphs.
//
// Exit codes: 0 success, 2 parse or usage error, 3 identity suite failure,
// 4 integration stopped early (partial output is still written).

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "sigma/dynamics.hpp"
#include "sigma/hamiltonian.hpp"
#include "sigma/report.hpp"
#include "sigma/serialize.hpp"

namespace {

using sigma::serialize::Json;

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kSuiteFailure = 3;
constexpr int kRuntime = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

sigma::expr::Expr parse_expr(const std::string& text, const char* flag) {
    try {
        return sigma::expr::parse(text);
    } catch (const sigma::expr::ParseError& e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    }
}

double parse_real(const std::string& text, const char* flag) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty() || !std::isfinite(v)) {
        throw UsageError(std::string(flag) + ": not a finite number: '" + text + "'");
    }
    return v;
}

sigma::expr::Point parse_point(const std::string& text) {
    std::array<double, 3> c{};
    std::size_t start = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        const std::size_t comma = text.find(',', start);
        const bool last = i == 2;
        if (last != (comma == std::string::npos)) throw UsageError("--q0: expected three comma-separated numbers");
        c[i] = parse_real(text.substr(start, last ? std::string::npos : comma - start), "--q0");
        start = comma + 1;
    }
    return {c[0], c[1], c[2]};
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double max_finite(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) {
        if (std::isnan(x)) return x;
        m = std::max(m, x);
    }
    return m;
}

struct Common {
    std::string f;
    std::string q0;
    std::string dt = "1e-3";
    std::string format = "csv";
    std::string method = "rk4";
};

sigma::dynamics::IntegratorConfig config_from(const Common& c, double t_end) {
    sigma::dynamics::IntegratorConfig cfg;
    cfg.dt = parse_real(c.dt, "--dt");
    if (!(cfg.dt > 0)) throw UsageError("--dt: must be positive");
    cfg.method = c.method == "rk45" ? sigma::dynamics::Method::rk45 : sigma::dynamics::Method::rk4;
    cfg.t_end = t_end;
    return cfg;
}

void write_trajectory(const sigma::dynamics::Trajectory& tr, const std::string& format, const Json& summary) {
    if (format == "json") {
        Json doc = sigma::serialize::to_json(tr);
        doc["summary"] = summary;
        std::cout << doc.dump(2) << '\n';
        return;
    }
    sigma::dynamics::write_csv(std::cout, tr);
    std::cout << '#';
    for (const auto& [key, value] : summary.items()) {
        std::cout << ' ' << key << '=';
        if (value.is_number_float()) {
            std::cout << format_double(value.get<double>());
        } else if (value.is_string()) {
            std::cout << value.get<std::string>();
        } else {
            std::cout << value.dump();
        }
    }
    std::cout << '\n';
}

int run_classify(const std::string& f_text) {
    const auto s = sigma::geometry::make_surface(parse_expr(f_text, "--f"));
    const auto c = sigma::contact::classify(s);
    const Json out{{"sasakian", c.sasakian},
                   {"k_contact", c.k_contact},
                   {"witness", sigma::serialize::to_json(c.witness)}};
    std::cout << out.dump(2) << '\n';
    return kOk;
}

int run_report(const std::string& f_text, const std::string& out_path, bool inject_fault) {
    sigma::report::ReportDocument doc;
    try {
        doc = sigma::report::build_report(f_text, {inject_fault});
    } catch (const sigma::expr::ParseError& e) {
        throw UsageError(std::string("--f: ") + e.what());
    }
    const std::string text = doc.body.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) throw UsageError("--out: cannot open '" + out_path + "'");
        file << text;
    }
    if (!doc.suites_passed()) {
        std::cerr << "identity suite failure:";
        for (const auto& name : doc.failed_suites) std::cerr << ' ' << name;
        std::cerr << '\n';
        return kSuiteFailure;
    }
    return kOk;
}

int finish(const sigma::dynamics::Trajectory& tr) {
    if (tr.status == sigma::dynamics::Status::ok) return kOk;
    std::cerr << "integration stopped: " << sigma::dynamics::to_string(tr.status) << ": " << tr.message << '\n';
    return kRuntime;
}

int run_flow(const Common& c, const std::string& H_text, const std::string& t_text) {
    const auto s = sigma::geometry::make_surface(parse_expr(c.f, "--f"));
    const auto H = parse_expr(H_text, "--H");
    const auto q0 = parse_point(c.q0);
    const double t_end = parse_real(t_text, "--t");
    if (!(t_end > 0)) throw UsageError("--t: integration span must be positive");

    auto tr = sigma::dynamics::integrate_hamiltonian(s, H, q0, config_from(c, t_end));
    const auto field = sigma::hamiltonian::hamiltonian_field(s, sigma::hamiltonian::BiVector::xi12(), H);
    auto residual = sigma::dynamics::geodesic_residual(s, field, tr);
    const double geodesic_max = max_finite(residual);
    tr.set_monitor("geodesic_residual", std::move(residual));

    double drift = 0.0;
    if (const auto* h = tr.monitor("H"); h != nullptr && !h->values.empty()) {
        for (double v : h->values) drift = std::max(drift, std::abs(v - h->values.front()));
    }
    const Json summary{{"status", sigma::dynamics::to_string(tr.status)},
                       {"samples", tr.size()},
                       {"max_H_drift", drift},
                       {"max_geodesic_residual", geodesic_max}};
    write_trajectory(tr, c.format, summary);
    return finish(tr);
}

int run_solve(const Common& c, const std::string& to_text) {
    const auto s = sigma::geometry::make_surface(parse_expr(c.f, "--f"));
    const auto q0 = parse_point(c.q0);
    const double to = parse_real(to_text, "--to");
    if (!(to > q0.x)) throw UsageError("--to: must exceed the initial x");

    const auto tr = sigma::dynamics::integrate_2graph(s, q0.x, q0.y, q0.p, config_from(c, to));
    Json summary{{"status", sigma::dynamics::to_string(tr.status)}, {"samples", tr.size()}};
    for (const auto& m : tr.monitors) summary["max_" + m.name] = max_finite(m.values);
    write_trajectory(tr, c.format, summary);
    return finish(tr);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Geometry of second-order ODEs y'' = f(x, y, p)", "sigma_forge"};
    app.set_version_flag("--version", SIGMA_FORGE_VERSION);
    app.require_subcommand(1);

    std::string classify_f;
    auto* classify = app.add_subcommand("classify", "Contact-metric classification of f");
    classify->add_option("--f", classify_f, "Right-hand side f(x, y, p)")->required();

    std::string report_f, report_out;
    auto* report = app.add_subcommand("report", "Full geometric report as JSON");
    report->add_option("--f", report_f, "Right-hand side f(x, y, p)")->required();
    report->add_option("--out", report_out, "Write the report to a file instead of stdout");
    bool inject_fault = false;
    report->add_flag("--inject-fault", inject_fault, "Corrupt the connection forms (negative control for exit 3)");

    Common flow_args;
    std::string flow_H, flow_t;
    auto* flow = app.add_subcommand("flow", "Integrate the Hamiltonian flow of H for Omega = xi1^xi2");
    flow->add_option("--f", flow_args.f, "Right-hand side f(x, y, p)")->required();
    flow->add_option("--H", flow_H, "Hamiltonian H(x, y, p)")->required();
    flow->add_option("--q0", flow_args.q0, "Initial point x,y,p")->required()->allow_extra_args(false);
    flow->add_option("--t", flow_t, "Final time (> 0)")->required();
    flow->add_option("--dt", flow_args.dt, "Step size (rk4) or initial step (rk45)")->capture_default_str();
    flow->add_option("--method", flow_args.method, "rk4 or rk45")
        ->check(CLI::IsMember({"rk4", "rk45"}))
        ->capture_default_str();
    flow->add_option("--format", flow_args.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    Common solve_args;
    std::string solve_to;
    auto* solve = app.add_subcommand("solve", "Integrate the 2-graph y' = p, p' = f in x");
    solve->add_option("--f", solve_args.f, "Right-hand side f(x, y, p)")->required();
    solve->add_option("--q0", solve_args.q0, "Initial x0,y0,p0")->required();
    solve->add_option("--to", solve_to, "Final x (> x0)")->required();
    solve->add_option("--dt", solve_args.dt, "Step size in x")->capture_default_str();
    solve->add_option("--method", solve_args.method, "rk4 or rk45")
        ->check(CLI::IsMember({"rk4", "rk45"}))
        ->capture_default_str();
    solve->add_option("--format", solve_args.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    if (const char* seed = std::getenv("SIGMA_FORGE_SEED"); seed != nullptr && !sigma::expr::parse_seed(seed)) {
        std::cerr << "error: SIGMA_FORGE_SEED must be a non-negative 64-bit integer, got '" << seed << "'\n";
        return kUsage;
    }

    try {
        if (*classify) return run_classify(classify_f);
        if (*report) return run_report(report_f, report_out, inject_fault);
        if (*flow) return run_flow(flow_args, flow_H, flow_t);
        if (*solve) return run_solve(solve_args, solve_to);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
