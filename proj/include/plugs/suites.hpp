#pragma once

#include <string>
#include <vector>

// Named verification suites shared by the CLI and the acceptance runner.
// Each suite executes a fixed list of checks (profiles, Diophantine
// identities, Wilson plugs, volume-preserving fields, the Denjoy map, the
// PL constructions, and the bordism ledger) and reports structured
// pass/fail results with numeric details.

namespace plugs::suites {

inline constexpr const char* kVersion = "plugkit 1.0.0";

struct SuiteConfig {
    unsigned seed = 1;
    int grid = 0;     // 0 = suite default density
    double tol = 0;   // 0 = suite default tolerance
    double c_v = 0;   // 0 = use the calibrated constant
};

struct CheckResult {
    int criterion = 0;  // acceptance criterion this check belongs to (1..10)
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    bool pass = false;
    double seconds = 0;
    std::vector<CheckResult> checks;
};

const std::vector<std::string>& suite_names();

// Throws std::invalid_argument for an unknown suite name.
SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg);

std::vector<SuiteReport> run_all(const SuiteConfig& cfg);

// UTF-8 JSON with stable key order, embedding the tool version and config.
std::string reports_json(const std::vector<SuiteReport>& reports,
                         const SuiteConfig& cfg);

}  // namespace plugs::suites
