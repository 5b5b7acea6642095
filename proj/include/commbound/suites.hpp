#pragma once

// Property suites: exhaustive or seeded-random checks of the library's
// theorems on small instances. Shared by `verify-suite` and the acceptance
// runner.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace commbound::suites {

struct SuiteResult {
    std::string name;
    std::string description;
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::vector<std::pair<std::string, double>> metrics;
    std::vector<std::string> messages;  // first few failures

    bool passed() const { return failures == 0 && checks > 0; }
    void check(bool ok, const std::string& what);
};

/// Suite names in their fixed run order.
std::vector<std::string> names();

/// Throws ArgumentError for an unknown name. Random suites draw only from
/// std::mt19937_64(seed), so results are reproducible.
SuiteResult run(const std::string& name, std::uint64_t seed = 0);

}  // namespace commbound::suites
