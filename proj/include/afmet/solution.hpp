#pragma once

#include <map>
#include <string>

namespace afmet {

/// Variational character of an approximate eigenvalue.
enum class BoundDirection { UpperBound, LowerBound, Exact, Indeterminate };

inline const char* to_string(BoundDirection b) {
    switch (b) {
        case BoundDirection::UpperBound: return "upper";
        case BoundDirection::LowerBound: return "lower";
        case BoundDirection::Exact: return "exact";
        default: return "indeterminate";
    }
}

/// Result of one variational solve (auxiliary-field or envelope form).
struct ApproxSolution {
    double energy = 0.0;
    double nu0 = 0.0;  ///< stationary auxiliary coupling
    double r0 = 0.0;   ///< tangency radius (NaN when the method is exact by construction)
    BoundDirection bound = BoundDirection::Indeterminate;
    double c1 = 0.0;  ///< tangent-potential slope in the base shape
    double c2 = 0.0;  ///< tangent-potential offset
    std::string method;
    std::map<std::string, double> diagnostics;  ///< residuals, counts, gaps
};

}  // namespace afmet
