#include "afmet/target_potential.hpp"

#include "afmet/errors.hpp"
#include "afmet/rootfind.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace afmet {

TargetPotential::TargetPotential(Analytic fn, BasePotential base, Interval radial_domain,
                                 std::string name, std::optional<ClosedForms> closed,
                                 std::optional<std::pair<double, double>> linear)
    : fn_(std::move(fn)),
      base_(base),
      domain_(radial_domain),
      name_(std::move(name)),
      closed_(std::move(closed)),
      linear_(linear) {
    if (!fn_.g || !fn_.g_prime || !fn_.g_second)
        throw DomainError("target potential requires g with two derivatives");
    if (!(domain_.hi > domain_.lo))
        throw DomainError("target potential: empty radial domain");
    classify_and_check();
}

void TargetPotential::classify_and_check() {
    // Probe the convexity of g over the image of the base shape. The sign of
    // g'' decides the variational character and, through K' = g''(P) P', the
    // monotonicity of the coupling profile.
    const double lo = std::max(domain_.lo, 1e-8);
    const double hi = std::min(domain_.hi, 1e8);
    const Eigen::ArrayXd rs = log_grid(lo, hi, 257);

    int pos = 0, neg = 0, finite = 0;
    double kmin = std::numeric_limits<double>::infinity();
    double kmax = -kmin;
    double gmax = 0.0;
    Eigen::ArrayXd g2(rs.size());
    for (Eigen::Index i = 0; i < rs.size(); ++i) {
        const double y = base_.P(rs[i]);
        const double s = fn_.g_second(y);
        g2[i] = s;
        if (std::isfinite(s)) gmax = std::max(gmax, std::abs(s));
        const double k = fn_.g_prime(y);
        if (std::isfinite(k)) {
            kmin = std::min(kmin, k);
            kmax = std::max(kmax, k);
        }
    }
    const double zero_band = 1e-13 * gmax;
    for (Eigen::Index i = 0; i < rs.size(); ++i) {
        const double s = g2[i];
        if (!std::isfinite(s)) continue;
        ++finite;
        if (s > zero_band) ++pos;
        else if (s < -zero_band) ++neg;
    }
    if (finite == 0)
        throw DomainError("target potential: g'' not finite anywhere on the base image");
    if (pos > 0 && neg > 0)
        bound_ = BoundDirection::Indeterminate;  // K not monotone; solvers reject
    else if (linear_.has_value() || (pos == 0 && neg == 0))
        bound_ = BoundDirection::Exact;
    else if (pos > 0)
        bound_ = BoundDirection::LowerBound;  // convex g
    else
        bound_ = BoundDirection::UpperBound;  // concave g

    k_image_ = {kmin, kmax};
}

double TargetPotential::V(double r) const {
    if (!domain_.contains(r)) throw DomainError("V: radius outside the domain");
    return fn_.g(base_.P(r));
}

double TargetPotential::V_prime(double r) const {
    if (!domain_.contains(r)) throw DomainError("V_prime: radius outside the domain");
    return fn_.g_prime(base_.P(r)) * base_.P_prime(r);
}

double TargetPotential::K(double r) const {
    if (!domain_.contains(r)) throw DomainError("K: radius outside the domain");
    return fn_.g_prime(base_.P(r));
}

double TargetPotential::K_prime(double r) const {
    if (!domain_.contains(r)) throw DomainError("K_prime: radius outside the domain");
    return fn_.g_second(base_.P(r)) * base_.P_prime(r);
}

double TargetPotential::I(double nu) const {
    if (is_linear())
        throw DomainError("I: coupling profile is constant for an affine target");
    if (bound_ == BoundDirection::Indeterminate)
        throw MonotonicityError(
            "coupling profile K(r) = g'(P(r)) is not monotone: g'' changes sign over "
            "the base-shape image, so the tangency radius is not well defined");
    if (closed_ && closed_->I) return closed_->I(nu);
    return invert_monotone([&](double r) { return K(r); },
                           [&](double r) { return K_prime(r); }, nu, domain_.lo,
                           domain_.hi, 1.0);
}

double TargetPotential::A(double v) const {
    if (is_linear())
        throw DomainError("A: coupling map is not invertible for an affine target");
    if (closed_ && closed_->A) return closed_->A(v);
    return base_.P(I(v));
}

std::pair<double, double> TargetPotential::linear_coefficients() const {
    if (!linear_) throw DomainError("target potential is not affine in the base shape");
    return *linear_;
}

TargetPotential TargetPotential::anharmonic(double beta, double mass) {
    if (!(beta > 0.0)) throw DomainError("anharmonic target requires beta > 0");
    if (!(mass > 0.0)) throw DomainError("anharmonic target requires mass > 0");
    const double sb = std::sqrt(beta);
    Analytic fn;
    fn.g = [sb](double y) { return 3.0 * y + 8.0 * sb * std::sqrt(y); };
    fn.g_prime = [sb](double y) { return 3.0 + 4.0 * sb / std::sqrt(y); };
    fn.g_second = [sb](double y) { return -2.0 * sb * std::pow(y, -1.5); };
    ClosedForms closed;
    closed.I = [sb](double nu) {
        if (!(nu > 3.0)) throw DomainError("anharmonic coupling must exceed 3");
        return 4.0 * sb / (nu - 3.0);
    };
    closed.A = [beta](double v) {
        if (!(v > 3.0)) throw DomainError("anharmonic coupling must exceed 3");
        return 16.0 * beta / ((v - 3.0) * (v - 3.0));
    };
    std::ostringstream nm;
    nm << "anharmonic(beta=" << beta << ")";
    return TargetPotential(fn, BasePotential(BaseFamily::Harmonic, mass),
                           {0.0, BasePotential::kInf}, nm.str(), closed);
}

TargetPotential TargetPotential::power_law(double a, double p, BaseFamily family,
                                           double mass) {
    if (!(a > 0.0)) throw DomainError("power-law target requires a > 0");
    if (!(p > -2.0)) throw DomainError("power-law target requires p > -2");
    if (!(mass > 0.0)) throw DomainError("power-law target requires mass > 0");
    std::ostringstream nm;
    nm << "power(a=" << a << ",p=" << p
       << (family == BaseFamily::Harmonic ? ",harmonic)" : ",coulomb)");

    Analytic fn;
    std::optional<ClosedForms> closed;
    std::optional<std::pair<double, double>> linear;
    if (family == BaseFamily::Harmonic) {
        // V = a r^p = g(P) with P = r^2, g(y) = a y^{p/2}.
        const double q = 0.5 * p;
        fn.g = [a, q](double y) { return a * std::pow(y, q); };
        fn.g_prime = [a, q](double y) { return a * q * std::pow(y, q - 1.0); };
        fn.g_second = [a, q](double y) { return a * q * (q - 1.0) * std::pow(y, q - 2.0); };
        if (p == 2.0) {
            linear = {a, 0.0};
        } else if (p > 0.0) {
            ClosedForms cf;
            cf.I = [a, p](double nu) { return std::pow(2.0 * nu / (a * p), 1.0 / (p - 2.0)); };
            cf.A = [a, p](double v) { return std::pow(2.0 * v / (a * p), 2.0 / (p - 2.0)); };
            closed = cf;
        }
    } else {
        // V = a r^p = g(P) with P = -1/r, g(y) = a (-y)^{-p} on y < 0.
        if (p == -1.0) {
            fn.g = [a](double y) { return a * y; };
            fn.g_prime = [a](double) { return a; };
            fn.g_second = [](double) { return 0.0; };
            linear = {a, 0.0};
        } else {
            fn.g = [a, p](double y) { return a * std::pow(-y, -p); };
            fn.g_prime = [a, p](double y) { return a * p * std::pow(-y, -p - 1.0); };
            fn.g_second = [a, p](double y) {
                return a * p * (p + 1.0) * std::pow(-y, -p - 2.0);
            };
            if (p > 0.0) {
                ClosedForms cf;
                cf.I = [a, p](double nu) { return std::pow(nu / (a * p), 1.0 / (p + 1.0)); };
                cf.A = [a, p](double v) { return -std::pow(a * p / v, 1.0 / (p + 1.0)); };
                closed = cf;
            }
        }
    }
    return TargetPotential(fn, BasePotential(family, mass), {0.0, BasePotential::kInf},
                           nm.str(), closed, linear);
}

TargetPotential TargetPotential::base_multiple(double c, BaseFamily family, double mass,
                                               double offset) {
    if (!(c > 0.0)) throw DomainError("affine target requires a positive base multiple");
    if (!(mass > 0.0)) throw DomainError("affine target requires mass > 0");
    Analytic fn;
    fn.g = [c, offset](double y) { return c * y + offset; };
    fn.g_prime = [c](double) { return c; };
    fn.g_second = [](double) { return 0.0; };
    std::ostringstream nm;
    nm << "base_multiple(c=" << c << ",offset=" << offset
       << (family == BaseFamily::Harmonic ? ",harmonic)" : ",coulomb)");
    return TargetPotential(fn, BasePotential(family, mass), {0.0, BasePotential::kInf},
                           nm.str(), std::nullopt, std::make_pair(c, offset));
}

}  // namespace afmet
