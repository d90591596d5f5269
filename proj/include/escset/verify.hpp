#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace escset {

struct VerifyCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyReport {
    std::string suite;
    std::vector<VerifyCheck> checks;

    bool passed() const;
};

/// "kdl", "iab", "continuity", "dichotomy", "thm12".
std::vector<std::string> verify_suite_names();

/// Runs a named invariant suite. Random probes draw from a generator seeded
/// with `seed`, so reports are reproducible. Throws ContractError for an
/// unknown suite.
VerifyReport run_verify_suite(const std::string& suite, std::uint64_t seed);

} // namespace escset
