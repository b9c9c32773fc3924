// Named verification suites: each bundles the module-level checks of one
// slice of the library into a list of Reports plus a JSON rendering, for the
// CLI `verify` verb and the acceptance harness.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "voaforge/operators.hpp"

namespace voaforge {

struct SuiteResult {
    std::string name;
    uint64_t seed = 0;
    bool ok = false;       // every report passed
    bool warning = false;  // passed, but with an advisory note
    std::vector<Report> reports;
};

// The fixed suite names accepted by run_suite.
const std::vector<std::string>& suite_names();

// Throws std::invalid_argument for an unknown name.  The seed governs the
// randomized suites and is embedded in the result.
SuiteResult run_suite(const std::string& name, uint64_t seed);

std::string suite_result_json(const SuiteResult& r);

// Randomized structural properties of the rewriting engine (grading
// additivity, locality bound, skew-symmetry, zero-mode derivation property,
// canonical idempotence), each checked on at least `cases` seeded cases.
std::vector<Report> engine_property_reports(uint64_t seed, int cases);

}  // namespace voaforge
