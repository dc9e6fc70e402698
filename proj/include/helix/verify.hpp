#pragma once

#include <string>
#include <vector>

#include "helix/slant_helix.hpp"

namespace helix {

struct CheckResult {
    std::string check;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerifyOptions {
    SlantHelixParams params;
    std::size_t samples = 400;
    double tol_scale = 1.0;  // global tolerance multiplier (HELIX_TOL)
    double perturb_z = 1.0;  // fault injection: scales the generator's z output
};

/// Runs the named family invariants at their pinned tolerances and returns
/// one entry per check. Deterministic for fixed options.
std::vector<CheckResult> run_verification(const VerifyOptions& opt);

/// True iff every check passed.
bool all_pass(const std::vector<CheckResult>& results);

} // namespace helix
