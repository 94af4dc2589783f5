#pragma once

// Built-in oracle suites behind `scatterlab selftest`.

#include <string>
#include <vector>

namespace scatterlab {

struct SelftestResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// level: "quick" or "full".
std::vector<SelftestResult> run_selftest(const std::string& level);

}  // namespace scatterlab
