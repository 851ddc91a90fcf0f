#pragma once

#include "afmet/radial_oracle.hpp"
#include "afmet/solution.hpp"
#include "afmet/target_potential.hpp"

namespace afmet {

/// One auxiliary-field extremization task: a target potential, the principal
/// number N of the base spectrum (continuous values admitted), and the
/// stationarity tolerance on |e_A'(nu0) - P(I(nu0))|, relative to the scale of
/// the two sides.
struct AfmProblem {
    TargetPotential target;
    double N = 0.0;
    double tolerance = 1e-9;
    int scan_points = 257;
};

/// Ascending grid of admissible couplings: the image of K probed over a wide
/// log-spaced radial range, intersected with the coupling domain of the base.
/// Shared by the auxiliary-field and envelope extremizers so both scan the
/// same physical range.
Eigen::ArrayXd coupling_scan_grid(const TargetPotential& target, int scan_points);

/// Auxiliary-field energy at fixed coupling: e_A(nu) + V(I(nu)) - nu P(I(nu)).
/// Affine targets bypass the (non-invertible) coupling profile and return the
/// exact result for any nu.
double afm_energy_at(const AfmProblem& problem, double nu);

/// d/dnu of the above; vanishes at the stationary coupling.
double afm_energy_slope(const AfmProblem& problem, double nu);

/// Extremize the auxiliary-field energy over the admissible coupling range
/// (the image of K): scan, bracket, refine with safeguarded Newton. Concave g
/// yields an interior minimum, convex g an interior maximum.
ApproxSolution afm_minimize(const AfmProblem& problem);

/// Tangent potential c1 P(r) + c2 of a solution, evaluated at r.
double tangent_potential(const ApproxSolution& solution, const TargetPotential& target,
                         double r);

/// Variational character from the convexity of g over the base-shape image.
BoundDirection classify_bound(const TargetPotential& target);

/// First-order energy shift per unit strength for V + sigma*v: v(r0).
double perturbation_estimate(const ApproxSolution& solution, const ScalarFn& v);

/// Relative deviation |nu0 - <K(r)>| / |nu0| with the expectation taken in the
/// eigenstate of T + nu0 P (a diagnostic of the mean-field picture).
double mean_field_deviation(const ApproxSolution& solution, const TargetPotential& target,
                            const RadialSolution& oracle_state);

}  // namespace afmet
