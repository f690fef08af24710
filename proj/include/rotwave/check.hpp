#pragma once

#include "rotwave/io.hpp"

#include <string>
#include <vector>

namespace rotwave {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Cross-cutting invariant suite: analytic-vs-finite-difference Jacobian,
/// laminar residual convergence order, shooting Richardson ratio, and the
/// K+/K- phase-shift duality. `break_jacobian` injects a fault into the
/// matrix under test so the FD check must fail.
std::vector<CheckResult> run_check_suite(const RunConfig& cfg, bool break_jacobian);

} // namespace rotwave
