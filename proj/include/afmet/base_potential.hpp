#pragma once

#include "afmet/quantum.hpp"

#include <utility>

namespace afmet {

/// A closed interval endpoint pair; open semantics (endpoints excluded) unless noted.
struct Interval {
    double lo;
    double hi;
    bool contains(double x) const { return x > lo && x < hi; }
};

enum class BaseFamily { Harmonic, Coulomb };

/// Solvable radial potential P(r) for which T + nu*P has a closed-form spectrum.
///
/// The kinetic term is p^2/(2m) throughout (hbar = 1). Shipped families:
///   Harmonic: P(r) = r^2,   eps(nu) = N*sqrt(2*nu/m),   N = 2n + l + 3/2
///   Coulomb:  P(r) = -1/r,  eps(nu) = -m*nu^2/(2*N^2),  N = n + l + 1
/// Both require coupling nu > 0. N may be any positive real; the integer
/// quantum numbers enter only through principal_number().
class BasePotential {
public:
    BasePotential(BaseFamily family, double mass);

    BaseFamily family() const { return family_; }
    double mass() const { return mass_; }

    // -- shape ---------------------------------------------------------------
    double P(double r) const;
    double P_prime(double r) const;
    double P_inverse(double y) const;
    /// Image of P over r in (0, inf).
    Interval P_image() const;

    // -- spectrum of T + nu*P ------------------------------------------------
    double energy(double nu, double N) const;         ///< eps_A(nu)
    double energy_dnu(double nu, double N) const;     ///< d eps_A / d nu
    double energy_d2nu(double nu, double N) const;    ///< d^2 eps_A / d nu^2
    Interval coupling_domain() const { return {0.0, kInf}; }

    // -- Legendre partner (kinetic potential) ---------------------------------
    /// k_A(s): slope of the spectrum expressed against the mean kinetic energy s.
    double kinetic_potential(double N, double s) const;
    double kinetic_potential_ds(double N, double s) const;
    double kinetic_potential_d2s(double N, double s) const;
    /// s(v) = eps_A(v) - v*eps_A'(v), the mean kinetic energy in the state of T + v*P.
    double mean_kinetic(double v, double N) const;
    /// Inverse of mean_kinetic in v: coupling whose state carries mean kinetic energy s.
    double coupling_for_mean_kinetic(double s, double N) const;

    double principal_number(const QuantumState& st) const;

    static constexpr double kInf = 1e308;

private:
    BaseFamily family_;
    double mass_;
    void check_nu(double nu) const;
    void check_N(double N) const;
};

/// Free-function spellings of the common operations.
double principal_number(const QuantumState& st, const BasePotential& base);
double base_energy(const BasePotential& base, double nu, double N);
double kinetic_potential(const BasePotential& base, double N, double s);

/// Numeric Legendre inversion: recover k_A(s) by root-finding on mean_kinetic.
/// Exists as an independent cross-check of the closed forms.
double kinetic_potential_numeric(const BasePotential& base, double N, double s);

}  // namespace afmet
