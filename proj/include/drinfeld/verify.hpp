#pragma once

#include <string>
#include <vector>

#include "drinfeld/config.hpp"

namespace drinfeld {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Runs the per-module invariant suites (randomized where the contracts say
// so, driven by cfg.seed). Returns one record per invariant.
std::vector<CheckResult> run_verify(const RunConfig& cfg);

}  // namespace drinfeld
