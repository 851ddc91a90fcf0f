#pragma once

#include "afmet/envelope.hpp"

#include <string>

namespace afmet {

/// Full workup of one anharmonic-oscillator state: every variational method,
/// the structural quantities of the closed-form treatment, and the exact
/// eigenvalue for comparison.
struct AnharmonicCase {
    double beta = 0.0;
    QuantumState state;
    double N = 0.0;
    EquivalenceReport report;
    double exact_energy = 0.0;
    double exact_error = 0.0;  ///< Richardson error bound of the oracle value
    double Y = 0.0;            ///< (N/beta)^{2/3}
    double x0 = 0.0;           ///< tangency radius
};

/// Solve the anharmonic oscillator V(x) = 3 x^2 + 8 sqrt(beta) x (mass 2) with
/// every method and the exact oracle.
AnharmonicCase run_anharmonic(double beta, QuantumState state, int oracle_points = 2000);

/// Auxiliary-field solve of V = a r^p over the chosen base at continuous N.
ApproxSolution run_power_law_family(double a, double p, BaseFamily family, double N,
                                    double tolerance = 1e-9);

/// Write the fixture documents (JSON) consumed by the test suite: the
/// anharmonic matrix, the power-law matrix, the perturbation study, and the
/// mean-field sweeps. Returns the number of files written.
int write_fixtures(const std::string& directory, int oracle_points = 2000);

}  // namespace afmet
