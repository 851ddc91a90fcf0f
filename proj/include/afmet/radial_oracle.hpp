#pragma once

#include "afmet/quantum.hpp"

#include <Eigen/Core>

#include <functional>

namespace afmet {

using ScalarFn = std::function<double(double)>;

/// Uniform radial grid excluding the origin: nodes r_i = i*h, i = 1..points,
/// with h = r_max/(points+1), so u(0) = u(r_max) = 0 are the ghost boundaries.
struct RadialGrid {
    double r_max = 0.0;
    int points = 2000;

    double spacing() const { return r_max / (points + 1); }
    double r_min() const { return spacing(); }
};

/// Eigenstate of the reduced radial equation -u''/(2m) + V_eff u = E u on a grid.
/// u is normalized so that spacing * sum(u_i^2) = 1 (trapezoid with zero ends).
struct RadialSolution {
    RadialGrid grid;
    Eigen::ArrayXd r;
    Eigen::ArrayXd u;
    double energy = 0.0;
    double error_estimate = 0.0;  ///< Richardson error bound when produced by a pair solve
    double norm_residual = 0.0;
    int nodes = 0;
};

/// Top two levels of the extrapolation ladder (fine halves the spacing of
/// coarse), plus the completed eigenvalue and its error estimate.
struct RadialPair {
    RadialSolution coarse;
    RadialSolution fine;
    double energy = 0.0;          ///< extrapolated eigenvalue
    double error_estimate = 0.0;  ///< drift between the last two extrapolants
};

/// Single-grid eigenvalue/state: second-order finite differences plus
/// Sturm-sequence bisection for the (n+1)-th eigenvalue and inverse iteration
/// for the eigenvector. The centrifugal term l(l+1)/(2 m r^2) is added here.
RadialSolution solve_radial_single(const ScalarFn& potential, double mass,
                                   QuantumState state, RadialGrid grid);

/// Solve on grid and on its two spacing-halved refinements, then Richardson-
/// extrapolate the eigenvalue through the second order. The error estimate is
/// the drift between the two first-stage extrapolants, a conservative bound on
/// the error of the returned value. Throws ConvergenceError when it exceeds
/// rel_tolerance * max(1, |E|).
RadialPair solve_radial_pair(const ScalarFn& potential, double mass, QuantumState state,
                             RadialGrid grid, double rel_tolerance = 1e-7);

/// Convenience wrapper: the fine-grid state carrying the Richardson-extrapolated
/// eigenvalue and its error estimate.
RadialSolution solve_radial(const ScalarFn& potential, double mass, QuantumState state,
                            RadialGrid grid, double rel_tolerance = 1e-7);

/// Composite quadrature of f(r) u(r)^2 over the grid (ghost ends vanish).
double expectation(const RadialSolution& solution, const ScalarFn& f);

/// Richardson-extrapolated expectation over a coarse/fine pair.
double expectation_extrapolated(const RadialPair& pair, const ScalarFn& f);

/// Choose r_max from a pilot energy (e.g. the variational estimate): a safety
/// multiple of the outer classical turning point plus a tunnelling margin of
/// 16 decay lengths at that radius.
RadialGrid auto_grid(const ScalarFn& potential, double mass, QuantumState state,
                     double pilot_energy, int points = 2000, double safety = 3.0);

}  // namespace afmet
