#include "afmet/base_potential.hpp"

#include "afmet/rootfind.hpp"

#include <cmath>

namespace afmet {

BasePotential::BasePotential(BaseFamily family, double mass) : family_(family), mass_(mass) {
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw DomainError("base potential mass must be positive and finite");
}

void BasePotential::check_nu(double nu) const {
    if (!(nu > 0.0) || !std::isfinite(nu))
        throw DomainError("coupling nu must lie in (0, inf)");
}

void BasePotential::check_N(double N) const {
    if (!(N > 0.0) || !std::isfinite(N))
        throw DomainError("principal number N must be positive");
}

double BasePotential::P(double r) const {
    if (!(r > 0.0))
        throw DomainError("base potential evaluated at r <= 0");
    return family_ == BaseFamily::Harmonic ? r * r : -1.0 / r;
}

double BasePotential::P_prime(double r) const {
    if (!(r > 0.0))
        throw DomainError("base potential derivative evaluated at r <= 0");
    return family_ == BaseFamily::Harmonic ? 2.0 * r : 1.0 / (r * r);
}

double BasePotential::P_inverse(double y) const {
    if (family_ == BaseFamily::Harmonic) {
        if (!(y > 0.0))
            throw DomainError("harmonic P_inverse needs y > 0");
        return std::sqrt(y);
    }
    if (!(y < 0.0))
        throw DomainError("coulomb P_inverse needs y < 0");
    return -1.0 / y;
}

Interval BasePotential::P_image() const {
    return family_ == BaseFamily::Harmonic ? Interval{0.0, kInf} : Interval{-kInf, 0.0};
}

double BasePotential::energy(double nu, double N) const {
    check_nu(nu);
    check_N(N);
    return family_ == BaseFamily::Harmonic ? N * std::sqrt(2.0 * nu / mass_)
                                           : -mass_ * nu * nu / (2.0 * N * N);
}

double BasePotential::energy_dnu(double nu, double N) const {
    check_nu(nu);
    check_N(N);
    return family_ == BaseFamily::Harmonic ? N / std::sqrt(2.0 * mass_ * nu)
                                           : -mass_ * nu / (N * N);
}

double BasePotential::energy_d2nu(double nu, double N) const {
    check_nu(nu);
    check_N(N);
    if (family_ == BaseFamily::Harmonic) {
        const double w = 2.0 * mass_ * nu;
        return -N * mass_ / (w * std::sqrt(w));
    }
    return -mass_ / (N * N);
}

double BasePotential::kinetic_potential(double N, double s) const {
    check_N(N);
    if (!(s > 0.0))
        throw DomainError("kinetic potential needs mean kinetic energy s > 0");
    return family_ == BaseFamily::Harmonic ? N * N / (2.0 * mass_ * s)
                                           : -std::sqrt(2.0 * mass_ * s) / N;
}

double BasePotential::kinetic_potential_ds(double N, double s) const {
    check_N(N);
    if (!(s > 0.0))
        throw DomainError("kinetic potential derivative needs s > 0");
    return family_ == BaseFamily::Harmonic ? -N * N / (2.0 * mass_ * s * s)
                                           : -std::sqrt(2.0 * mass_) / (2.0 * N * std::sqrt(s));
}

double BasePotential::kinetic_potential_d2s(double N, double s) const {
    check_N(N);
    if (!(s > 0.0))
        throw DomainError("kinetic potential curvature needs s > 0");
    return family_ == BaseFamily::Harmonic
               ? N * N / (mass_ * s * s * s)
               : std::sqrt(2.0 * mass_) / (4.0 * N * s * std::sqrt(s));
}

double BasePotential::mean_kinetic(double v, double N) const {
    check_nu(v);
    check_N(N);
    return family_ == BaseFamily::Harmonic ? N * std::sqrt(v / (2.0 * mass_))
                                           : mass_ * v * v / (2.0 * N * N);
}

double BasePotential::coupling_for_mean_kinetic(double s, double N) const {
    check_N(N);
    if (!(s > 0.0))
        throw DomainError("mean kinetic energy must be positive");
    return family_ == BaseFamily::Harmonic ? 2.0 * mass_ * s * s / (N * N)
                                           : N * std::sqrt(2.0 * s / mass_);
}

double BasePotential::principal_number(const QuantumState& st) const {
    validate(st);
    return family_ == BaseFamily::Harmonic ? 2.0 * st.n + st.l + 1.5
                                           : static_cast<double>(st.n + st.l + 1);
}

double principal_number(const QuantumState& st, const BasePotential& base) {
    return base.principal_number(st);
}

double base_energy(const BasePotential& base, double nu, double N) {
    return base.energy(nu, N);
}

double kinetic_potential(const BasePotential& base, double N, double s) {
    return base.kinetic_potential(N, s);
}

double kinetic_potential_numeric(const BasePotential& base, double N, double s) {
    if (!(s > 0.0))
        throw DomainError("kinetic potential needs s > 0");
    // mean_kinetic is strictly increasing in v for a concave spectrum; invert it.
    const double v = invert_monotone(
        [&](double v_) { return base.mean_kinetic(v_, N); },
        [&](double v_) { return -v_ * base.energy_d2nu(v_, N); }, s, 0.0, BasePotential::kInf,
        1.0);
    return base.energy_dnu(v, N);
}

}  // namespace afmet
