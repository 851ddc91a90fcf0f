#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace afmet {

/// Outcome of one verification claim, with the worst observed residual and the
/// tolerance it was held against.
struct ClaimResult {
    int id = 0;
    std::string name;
    std::string suite;
    bool pass = false;
    double worst = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

/// Run a verification suite: one of "equivalence", "bounds", "scaling",
/// "tangency", "perturbation", or "all". Every claim recomputes its case
/// matrix live (solver plus exact oracle); nothing is read from disk.
std::vector<ClaimResult> run_verification(const std::string& suite);

/// Render one claim as a fixed-width summary line (PASS/FAIL, name, residual).
std::string format_claim(const ClaimResult& claim);

}  // namespace afmet
