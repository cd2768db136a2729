#pragma once

#include <string>
#include <vector>

#include "sigma/serialize.hpp"

// The full geometric report for one right-hand side f.
namespace sigma::report {

struct ReportDocument {
    serialize::Json body;
    // Names of identity suites with a nonzero residual; empty on success.
    std::vector<std::string> failed_suites;

    [[nodiscard]] bool suites_passed() const { return failed_suites.empty(); }
};

struct ReportOptions {
    // Negative control: scale alpha by 2 before the first-structure check so
    // that suite must fail.
    bool inject_fault = false;
};

// Throws expr::ParseError when f does not parse.
[[nodiscard]] ReportDocument build_report(const std::string& f_text, const ReportOptions& options = {});

}  // namespace sigma::report
