#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "doctest.h"
#include "support/process.hpp"

using nlohmann::json;
using sigma::testing::run_command;
using sigma::testing::shell_quote;

namespace {

std::string cli(const std::string& args) { return shell_quote(SIGMA_FORGE_BINARY) + " " + args; }

// Last data row of CSV output, skipping the trailing summary comment.
std::vector<double> last_row(const std::string& csv) {
    std::istringstream in(csv);
    std::string line, last;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') last = line;
    }
    std::vector<double> out;
    std::istringstream row(last);
    std::string cell;
    while (std::getline(row, cell, ',')) out.push_back(std::stod(cell));
    return out;
}

std::string header(const std::string& csv) { return csv.substr(0, csv.find('\n')); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("classify") {
    auto a = run_command(cli("classify --f 'x + p^2'"));
    CHECK(a.exit_code == 0);
    CHECK(json::parse(a.out)["sasakian"] == true);

    auto b = run_command(cli("classify --f y"));
    CHECK(b.exit_code == 0);
    const auto jb = json::parse(b.out);
    CHECK(jb["sasakian"] == false);
    CHECK(jb["witness"] == "1");

    CHECK(run_command(cli("classify --f 'x +'")).exit_code == 2);
    CHECK(run_command(cli("classify")).exit_code == 2);
    CHECK(run_command(cli("frobnicate --f x")).exit_code == 2);
}

TEST_CASE("report documents") {
    auto zero = run_command(cli("report --f 0"));
    REQUIRE(zero.exit_code == 0);
    const auto j0 = json::parse(zero.out);
    CHECK(j0["suites_passed"] == true);
    CHECK(j0["chern"]["trivial"] == true);
    for (const char* section : {"first_structure", "identities"}) {
        for (const auto& e : j0["connection"][section]["entries"]) CHECK(e["zero"] == true);
    }
    for (const auto& e : j0["contact"]["identities"]["entries"]) CHECK(e["zero"] == true);
    for (const auto& e : j0["structure_equations"]["residuals"]["entries"]) CHECK(e["zero"] == true);

    auto xp = run_command(cli("report --f 'x*p'"));
    REQUIRE(xp.exit_code == 0);
    const auto jxp = json::parse(xp.out);
    CHECK(jxp["chern"]["trivial"] == false);
    CHECK(jxp["chern"]["curvature"] == "-4 - 4*x^2");
    CHECK(jxp["bihamiltonian"]["applicable"] == true);
    CHECK(jxp["bihamiltonian"]["compatible"] == true);

    auto x2 = run_command(cli("report --f 'x^2'"));
    REQUIRE(x2.exit_code == 0);
    const auto jx2 = json::parse(x2.out);
    CHECK(jx2["heisenberg"]["flag"] == true);
    const auto& sc = jx2["heisenberg"]["structure_constants"];
    CHECK(sc["d eta2"]["basis"]["eta1^eta3"] == "2");
    CHECK(sc["d eta3"]["basis"]["eta1^eta3"] == "0");
    CHECK(jx2["heisenberg"]["reeb"]["represents_reeb"] == true);

    auto y = run_command(cli("report --f y"));
    CHECK(y.exit_code == 0);
    CHECK(json::parse(y.out)["heisenberg"]["flag"] == false);

    CHECK(run_command(cli("report --f 'sin('")).exit_code == 2);
}

TEST_CASE("report is byte-identical and --out matches stdout") {
    const auto a = run_command(cli("report --f 'x*p'"));
    const auto b = run_command(cli("report --f 'x*p'"));
    CHECK(a.out == b.out);

    const std::string path = "cli_report_out.json";
    REQUIRE(run_command(cli("report --f 'x*p' --out " + path)).exit_code == 0);
    std::ifstream file(path, std::ios::binary);
    std::stringstream content;
    content << file.rdbuf();
    CHECK(content.str() == a.out);
    std::remove(path.c_str());

    // The sampling seed only affects the numeric zero test.
    const auto seeded = run_command("SIGMA_FORGE_SEED=12345 " + cli("report --f 'x*p'"));
    CHECK(seeded.exit_code == 0);
    CHECK(seeded.out == a.out);
}

TEST_CASE("exit codes for failures") {
    CHECK(run_command(cli("report --f 'x*p' --inject-fault")).exit_code == 3);
    CHECK(run_command("SIGMA_FORGE_SEED=banana " + cli("classify --f x")).exit_code == 2);
    CHECK(run_command("SIGMA_FORGE_SEED=-3 " + cli("classify --f x")).exit_code == 2);
    CHECK(run_command(cli("flow --f 0 --H y --q0 0,0,0 --t -1")).exit_code == 2);
    CHECK(run_command(cli("flow --f 0 --H y --q0 0,0,0 --t 0")).exit_code == 2);
    CHECK(run_command(cli("flow --f 0 --H y --q0 0,0 --t 1")).exit_code == 2);
    CHECK(run_command(cli("flow --f 0 --H 'y +' --q0 0,0,0 --t 1")).exit_code == 2);
    CHECK(run_command(cli("flow --f 0 --H y --q0 0,0,0 --t 1 --dt 0")).exit_code == 2);
    CHECK(run_command(cli("flow --f 0 --H y --q0 0,0,0 --t 1 --format xml")).exit_code == 2);
    CHECK(run_command(cli("solve --f 0 --q0 1,0,0 --to 1")).exit_code == 2);

    const auto blow = run_command(cli("solve --f 'p^2' --q0 0,0,1 --to 2"));
    CHECK(blow.exit_code == 4);
    CHECK(blow.out.rfind("x,y,p,", 0) == 0);
    CHECK(blow.out.find("status=blow_up") != std::string::npos);
}

TEST_CASE("flow") {
    const auto reeb = run_command(cli("flow --f x --H 'x/2' --q0 0,0,0 --t 1"));
    REQUIRE(reeb.exit_code == 0);
    CHECK(header(reeb.out) == "t,x,y,p,H,geodesic_residual");
    const auto r = last_row(reeb.out);
    CHECK(r[0] == 1.0);
    CHECK(std::abs(r[2] - 2.0) < 1e-8);
    CHECK(reeb.out.find("# status=ok") != std::string::npos);

    const auto lin = run_command(cli("flow --f 0 --H y --q0 0,0,0 --t 1"));
    REQUIRE(lin.exit_code == 0);
    CHECK(std::abs(last_row(lin.out)[1] + 4.0) < 1e-12);

    const auto neg = run_command(cli("flow --f 0 --H y --q0 -1,0.5,0 --t 1"));
    REQUIRE(neg.exit_code == 0);
    CHECK(std::abs(last_row(neg.out)[1] + 5.0) < 1e-12);

    const auto js = run_command(cli("flow --f 0 --H y --q0 0,0,0 --t 1 --dt 0.25 --format json"));
    REQUIRE(js.exit_code == 0);
    const auto doc = json::parse(js.out);
    CHECK(doc["status"] == "ok");
    CHECK(doc["samples"].size() == 5);
    CHECK(doc["samples"][4]["x"] == -4.0);
    CHECK(doc["summary"]["max_H_drift"] == 0.0);

    const auto adaptive = run_command(cli("flow --f 'x + p^2' --H 'x + p^2' --q0 0.1,0.2,0.3 --t 1 --method rk45"));
    CHECK(adaptive.exit_code == 0);
}

TEST_CASE("solve") {
    const auto a = run_command(cli("solve --f 1 --q0 0,0,0 --to 1"));
    REQUIRE(a.exit_code == 0);
    CHECK(header(a.out) == "x,y,p,pullback_dy_minus_p,pullback_dp_minus_f");
    CHECK(std::abs(last_row(a.out)[1] - 0.5) < 1e-8);

    const auto b = run_command(cli("solve --f 0 --q0 0,0,1 --to 2"));
    REQUIRE(b.exit_code == 0);
    CHECK(std::abs(last_row(b.out)[1] - 2.0) < 1e-8);

    const auto c = run_command(cli("solve --f '-y' --q0 0,0,1 --to 3.14159265"));
    REQUIRE(c.exit_code == 0);
    CHECK(std::abs(last_row(c.out)[1] - std::sin(3.14159265)) < 1e-8);
    CHECK(std::abs(last_row(c.out)[1]) < 1e-6);
}

}  // TEST_SUITE
