#pragma once

#include "afmet/errors.hpp"

namespace afmet {

/// Radial quantum numbers of a bound state: n counts radial nodes, l is orbital momentum.
struct QuantumState {
    int n = 0;
    int l = 0;
};

inline void validate(const QuantumState& st) {
    if (st.n < 0 || st.l < 0)
        throw DomainError("quantum numbers must satisfy n >= 0 and l >= 0");
}

}  // namespace afmet
