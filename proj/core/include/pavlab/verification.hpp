#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pavlab {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    int criterion = 0;  // 1-based position in the bundled battery
    bool pass = false;
    double seconds = 0.0;
    double budget_seconds = 0.0;
    std::vector<CheckResult> checks;
};

// The bundled verification battery. Each suite checks one acceptance
// criterion: exact identities, frozen regression values, analytic limits
// with pinned tolerances, and independent-oracle comparisons. The seed
// drives the seeded-random suites; the default reproduces the shipped
// expectations.
inline constexpr uint64_t kVerifySeed = 0x5eed0001u;

std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, uint64_t seed = kVerifySeed);
std::vector<SuiteResult> run_all_suites(uint64_t seed = kVerifySeed);

std::string format_suite_line(const SuiteResult& r);

}
