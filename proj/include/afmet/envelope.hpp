#pragma once

#include "afmet/afm.hpp"
#include "afmet/solution.hpp"
#include "afmet/target_potential.hpp"

namespace afmet {

/// Straight line in the base shape touching V at the contact radius t:
/// V^t(r) = slope * P(r) + offset with V^t(t) = V(t), (V^t)'(t) = V'(t).
struct TangentialPotential {
    double t = 0.0;
    double slope = 0.0;
    double offset = 0.0;

    double operator()(double p_of_r) const { return slope * p_of_r + offset; }
};

/// One point of the Legendre pair of the base spectrum: mean kinetic energy s,
/// kinetic potential k = k_A(s), and the coupling v that generates them.
struct KineticPotentialSample {
    double s = 0.0;
    double k = 0.0;
    double v = 0.0;
};

/// Tangential potential of the target at contact radius t.
TangentialPotential tangential_at(const TargetPotential& target, double t);

/// Quadratic coefficient of the defect V(t+eps) - V^t(t+eps):
/// (1/2) P'(t)^2 g''(P(t)).
double tangency_defect_coefficient(const TargetPotential& target, double t);

/// Legendre sample of the base spectrum at coupling v.
KineticPotentialSample kinetic_sample(const BasePotential& base, double N, double v);

/// Envelope energy in the mean-kinetic variable: s + g(k_A(s)).
double et_energy_over_s(const TargetPotential& target, double N, double s);

/// Minimize s + g(k_A(s)) over s > 0.
ApproxSolution et_minimize_s(const TargetPotential& target, double N,
                             double tolerance = 1e-9, int scan_points = 257);

/// Envelope energy in the coupling variable, in the form that agrees with the
/// auxiliary-field energy pointwise: e_A(v) + g(A(v)) - v A(v) with A = g'^{-1}.
double et_energy_over_v(const TargetPotential& target, double N, double v);

/// The same energy written through the spectrum slope only:
/// e_A(v) - v e_A'(v) + g(e_A'(v)). Coincides with et_energy_over_v at the
/// stationary coupling (where A(v0) = e_A'(v0)) but not pointwise.
double et_energy_over_v_principal(const TargetPotential& target, double N, double v);

/// Minimize the envelope energy over the coupling; the stationary v0 satisfies
/// A(v0) = e_A'(v0).
ApproxSolution et_minimize_v(const TargetPotential& target, double N,
                             double tolerance = 1e-9, int scan_points = 257);

/// Side-by-side solve with every method plus the residuals tying them together.
struct EquivalenceReport {
    ApproxSolution afm;
    ApproxSolution et_s;
    ApproxSolution et_v;
    double t0 = 0.0;                       ///< tangency radius I(nu0)
    double max_energy_gap_rel = 0.0;       ///< max pairwise relative energy gap
    double coupling_gap = 0.0;             ///< largest coupling disagreement vs afm
    double tangency_value_residual = 0.0;  ///< |Vt(r0) - V(r0)|
    double tangency_slope_residual = 0.0;  ///< |Vt'(r0) - V'(r0)|
};

EquivalenceReport equivalence_report(const TargetPotential& target, double N,
                                     double tolerance = 1e-9);

}  // namespace afmet
