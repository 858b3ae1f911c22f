#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace sdea {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct CheckOptions {
    std::size_t n_max = 200;
    /// Test hook: shifts the engine-side counter limit by one so the threshold check must fail.
    bool corrupt_threshold = false;
};

/// Closed-form sweeps plus engine smoke tests. Every entry must pass.
std::vector<CheckResult> run_self_checks(const CheckOptions& options);

} // namespace sdea
