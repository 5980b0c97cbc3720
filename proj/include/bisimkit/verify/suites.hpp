#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bisimkit::verify {

struct SuiteInfo {
    int id;
    std::string name;
    std::string title;
};

struct SuiteResult {
    int id = 0;
    std::string name;
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    /// The first few failing instances.
    std::vector<std::string> failure_details;
    /// Counters and logged observations that do not affect the verdict.
    std::vector<std::string> notes;
    bool passed() const { return cases > 0 && failures == 0; }
};

/// Suites 1 to 11, in order.
const std::vector<SuiteInfo>& suite_catalog();
/// Looks a suite up by name or number.
std::optional<int> find_suite(const std::string& key);
/// Deterministic in (id, seed).
SuiteResult run_suite(int id, std::uint64_t seed);

}  // namespace bisimkit::verify
