#include "afmet/afm.hpp"

#include "afmet/errors.hpp"
#include "afmet/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace afmet {
namespace {

void check_problem(const AfmProblem& pb) {
    if (!(pb.N > 0.0) || !std::isfinite(pb.N))
        throw DomainError("problem needs a positive principal number N");
    if (!(pb.tolerance > 0.0)) throw DomainError("problem needs a positive tolerance");
    if (pb.scan_points < 16) throw DomainError("scan needs at least 16 points");
}

}  // namespace

Eigen::ArrayXd coupling_scan_grid(const TargetPotential& target, int scan_points) {
    const Interval dom = target.radial_domain();
    const double lo = std::max(dom.lo, 1e-8);
    const double hi = std::min(dom.hi, 1e8);
    const Eigen::ArrayXd rs = log_grid(lo, hi, scan_points);
    const Interval cd = target.base().coupling_domain();
    std::vector<double> nus;
    nus.reserve(static_cast<size_t>(rs.size()));
    for (Eigen::Index i = 0; i < rs.size(); ++i) {
        const double k = target.K(rs[i]);
        if (std::isfinite(k) && cd.contains(k)) nus.push_back(k);
    }
    std::sort(nus.begin(), nus.end());
    nus.erase(std::unique(nus.begin(), nus.end()), nus.end());
    if (nus.size() < 2)
        throw DomainError(
            "coupling profile never enters the admissible domain: the target is not "
            "expressible as an attractive deformation of this base");
    Eigen::ArrayXd grid(static_cast<Eigen::Index>(nus.size()));
    for (size_t i = 0; i < nus.size(); ++i) grid[static_cast<Eigen::Index>(i)] = nus[i];
    return grid;
}

double afm_energy_at(const AfmProblem& problem, double nu) {
    check_problem(problem);
    const TargetPotential& t = problem.target;
    const BasePotential& base = t.base();
    if (t.is_linear()) {
        const auto [c, b] = t.linear_coefficients();
        return base.energy(c, problem.N) + b;
    }
    const double r = t.I(nu);
    return base.energy(nu, problem.N) + t.V(r) - nu * base.P(r);
}

double afm_energy_slope(const AfmProblem& problem, double nu) {
    check_problem(problem);
    const TargetPotential& t = problem.target;
    if (t.is_linear()) return 0.0;
    return t.base().energy_dnu(nu, problem.N) - t.A(nu);
}

ApproxSolution afm_minimize(const AfmProblem& problem) {
    check_problem(problem);
    const TargetPotential& t = problem.target;
    const BasePotential& base = t.base();

    if (t.is_linear()) {
        const auto [c, b] = t.linear_coefficients();
        ApproxSolution sol;
        sol.energy = base.energy(c, problem.N) + b;
        sol.nu0 = c;
        sol.r0 = std::numeric_limits<double>::quiet_NaN();
        sol.bound = BoundDirection::Exact;
        sol.c1 = c;
        sol.c2 = b;
        sol.method = "afm";
        sol.diagnostics["stationarity_residual"] = 0.0;
        sol.diagnostics["stationary_points"] = 1.0;
        sol.diagnostics["iterations"] = 0.0;
        sol.diagnostics["closed_form_inversion"] = 1.0;
        return sol;
    }
    const BoundDirection bd = t.bound_direction();
    if (bd == BoundDirection::Indeterminate)
        throw MonotonicityError(
            "cannot extremize: g'' changes sign over the base-shape image");

    auto phi = [&](double nu) {
        const double r = t.I(nu);
        return base.energy(nu, problem.N) + t.V(r) - nu * base.P(r);
    };
    auto dphi = [&](double nu) { return base.energy_dnu(nu, problem.N) - t.A(nu); };
    auto d2phi = [&](double nu) {
        return base.energy_d2nu(nu, problem.N) - 1.0 / t.g_second(t.A(nu));
    };

    const Eigen::ArrayXd grid = coupling_scan_grid(t, problem.scan_points);
    const ExtremumRule rule =
        bd == BoundDirection::UpperBound ? ExtremumRule::Min : ExtremumRule::Max;
    const StationaryResult st = find_stationary(phi, dphi, d2phi, grid, rule);

    const double scale = std::max(1.0, std::abs(base.energy_dnu(st.x, problem.N)));
    if (!(st.deriv_residual <= problem.tolerance * scale))
        throw ConvergenceError(
            "stationarity refinement did not reach the requested tolerance");

    ApproxSolution sol;
    sol.energy = st.value;
    sol.nu0 = st.x;
    sol.r0 = t.I(st.x);
    sol.bound = bd;
    sol.c1 = st.x;  // K(r0) = nu0 by construction of the tangency radius
    sol.c2 = t.V(sol.r0) - st.x * base.P(sol.r0);
    sol.method = "afm";
    sol.diagnostics["stationarity_residual"] = st.deriv_residual;
    sol.diagnostics["stationary_points"] = st.candidates;
    sol.diagnostics["iterations"] = st.iterations;
    sol.diagnostics["closed_form_inversion"] = t.has_closed_inversion() ? 1.0 : 0.0;
    return sol;
}

double tangent_potential(const ApproxSolution& solution, const TargetPotential& target,
                         double r) {
    return solution.c1 * target.base().P(r) + solution.c2;
}

BoundDirection classify_bound(const TargetPotential& target) {
    return target.bound_direction();
}

double perturbation_estimate(const ApproxSolution& solution, const ScalarFn& v) {
    if (!v) throw DomainError("perturbation estimate: observable callable is empty");
    return v(solution.r0);
}

double mean_field_deviation(const ApproxSolution& solution, const TargetPotential& target,
                            const RadialSolution& oracle_state) {
    const double mean_k = expectation(oracle_state, [&](double r) { return target.K(r); });
    if (solution.nu0 == 0.0) throw DomainError("mean-field deviation needs nu0 != 0");
    return std::abs(solution.nu0 - mean_k) / std::abs(solution.nu0);
}

}  // namespace afmet
