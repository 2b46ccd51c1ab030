#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace srff::acceptance {

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double budget_seconds = 0.0;
    double elapsed_seconds = 0.0;
    std::string detail;  // multi-line measurement table
};

// Runs every verification check, streaming one PASS/FAIL line per check.
std::vector<CheckResult> run_all(std::ostream& out);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace srff::acceptance
