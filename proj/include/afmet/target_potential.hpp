#pragma once

#include "afmet/base_potential.hpp"
#include "afmet/solution.hpp"

#include <functional>
#include <optional>
#include <string>

namespace afmet {

using ScalarFn = std::function<double(double)>;

/// Target interaction V(r) = g(P(r)) expressed through the base shape P of a
/// solvable model. Carries g with two derivatives, optional closed-form
/// inverses, and the convexity classification of g over the image of P.
class TargetPotential {
public:
    struct Analytic {
        ScalarFn g;         ///< g(y)
        ScalarFn g_prime;   ///< g'(y)
        ScalarFn g_second;  ///< g''(y)
    };

    /// Closed-form inversions, registered when available; solvers fall back to
    /// numeric inversion otherwise.
    struct ClosedForms {
        ScalarFn I;  ///< r0 as a function of the auxiliary coupling nu
        ScalarFn A;  ///< g'^{-1}: mean base shape as a function of v
    };

    TargetPotential(Analytic fn, BasePotential base, Interval radial_domain,
                    std::string name, std::optional<ClosedForms> closed = std::nullopt,
                    std::optional<std::pair<double, double>> linear = std::nullopt);

    // --- target potential and its radial derivative -------------------------
    double V(double r) const;
    double V_prime(double r) const;

    // --- composition with the base shape ------------------------------------
    double g(double y) const { return fn_.g(y); }
    double g_prime(double y) const { return fn_.g_prime(y); }
    double g_second(double y) const { return fn_.g_second(y); }

    /// K(r) = g'(P(r)): the auxiliary-coupling profile.
    double K(double r) const;
    double K_prime(double r) const;

    /// I = K^{-1}: tangency radius for a given coupling (closed form if known).
    double I(double nu) const;
    /// A = g'^{-1}: inverse of the coupling map in the mean-base-shape variable.
    double A(double v) const;

    /// Range of K over the radial domain, ordered (lo < hi).
    Interval K_image() const { return k_image_; }
    Interval radial_domain() const { return domain_; }

    const BasePotential& base() const { return base_; }
    const std::string& name() const { return name_; }

    /// Convexity class of g over the image of P: convex g gives a lower bound,
    /// concave g an upper bound, affine g the exact result.
    BoundDirection bound_direction() const { return bound_; }
    bool is_linear() const { return linear_.has_value(); }
    bool has_closed_inversion() const { return closed_.has_value(); }
    /// For affine g(y) = c*y + b: the pair (c, b).
    std::pair<double, double> linear_coefficients() const;

    // --- factories -----------------------------------------------------------
    /// One-dimensional anharmonic target V(x) = 3 x^2 + 8 sqrt(beta) x on the
    /// harmonic base with mass 2 (g(y) = 3 y + 8 sqrt(beta y), concave).
    static TargetPotential anharmonic(double beta, double mass = 2.0);

    /// Power-law target V(r) = a r^p (a > 0, p > -2) on the given base family.
    static TargetPotential power_law(double a, double p, BaseFamily family,
                                     double mass = 1.0);

    /// Affine-in-base target V(r) = c P(r) + offset: solvable exactly.
    static TargetPotential base_multiple(double c, BaseFamily family, double mass = 1.0,
                                         double offset = 0.0);

private:
    void classify_and_check();

    Analytic fn_;
    BasePotential base_;
    Interval domain_;
    std::string name_;
    std::optional<ClosedForms> closed_;
    std::optional<std::pair<double, double>> linear_;
    Interval k_image_{0.0, 0.0};
    BoundDirection bound_ = BoundDirection::Indeterminate;
};

}  // namespace afmet
