#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stripes::audit {

struct SuiteResult {
    std::string name;
    bool pass = false;
    double max_error = 0.0;
    std::string details;
    double seconds = 0.0;
};

struct Options {
    std::uint64_t seed = 0;
    /// Override for per-suite instance counts (0 = suite defaults).
    std::size_t trials = 0;
    /// Acceptance semantics: the pd suite demands a rope witness and the
    /// discriminability suite the fixed 0.5x factors. Off, the pd suite
    /// accepts witness-or-budget-exhaustion and discriminability asserts the
    /// pinned regression bands.
    bool strict = false;
    /// Include the wall-clock half of the linear suite.
    bool with_benchmark = true;
};

std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, const Options& options);
std::vector<SuiteResult> run_all(const Options& options);

} // namespace stripes::audit
