#include "afmet/radial_oracle.hpp"

#include "afmet/errors.hpp"
#include "afmet/rootfind.hpp"

#include <cmath>
#include <sstream>

namespace afmet {
namespace {

// Eigenvalue count below x for the symmetric tridiagonal (diag d, constant
// off-diagonal e) via the Sturm/LDL^T sequence.
int count_below(const Eigen::ArrayXd& d, double e2, double x) {
    int cnt = 0;
    double q = 1.0;
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        double qi = (i == 0) ? d[0] - x : (d[i] - x) - e2 / q;
        if (std::abs(qi) < 1e-300) qi = -1e-300;
        if (qi < 0.0) ++cnt;
        q = qi;
    }
    return cnt;
}

// k-th (0-based, ascending) eigenvalue of the same matrix by bisection.
double kth_eigenvalue(const Eigen::ArrayXd& d, double e, int k) {
    const double e2 = e * e;
    double lo = d.minCoeff() - 2.0 * std::abs(e);
    double hi = d.maxCoeff() + 2.0 * std::abs(e);
    for (int iter = 0; iter < 240 && hi - lo > 1e-15 * (1.0 + std::abs(lo) + std::abs(hi));
         ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (count_below(d, e2, mid) >= k + 1)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

// Solve (T - sigma I) x = f for tridiagonal T with partial pivoting; T has
// diagonal d and constant off-diagonal e. Near-singular shifts are expected
// (inverse iteration) and handled through the pivoting and tiny-pivot guards.
Eigen::ArrayXd solve_shifted(const Eigen::ArrayXd& d, double e, double sigma,
                             Eigen::ArrayXd f) {
    const Eigen::Index n = d.size();
    Eigen::ArrayXd a = d - sigma;
    Eigen::ArrayXd b = Eigen::ArrayXd::Constant(n, e);
    if (n > 0) b[n - 1] = 0.0;
    Eigen::ArrayXd c = Eigen::ArrayXd::Zero(n);

    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        double sub = e;            // row i+1, column i
        double ai1 = a[i + 1];     // row i+1, column i+1
        double bi1 = b[i + 1];     // row i+1, column i+2
        if (std::abs(sub) > std::abs(a[i])) {
            std::swap(a[i], sub);
            std::swap(b[i], ai1);
            std::swap(c[i], bi1);
            std::swap(f[i], f[i + 1]);
        }
        double piv = a[i];
        if (std::abs(piv) < 1e-300) piv = (std::signbit(piv) ? -1e-300 : 1e-300);
        const double m = sub / piv;
        a[i + 1] = ai1 - m * b[i];
        b[i + 1] = bi1 - m * c[i];
        f[i + 1] -= m * f[i];
    }
    Eigen::ArrayXd x(n);
    for (Eigen::Index i = n - 1; i >= 0; --i) {
        double piv = a[i];
        if (std::abs(piv) < 1e-300) piv = (std::signbit(piv) ? -1e-300 : 1e-300);
        double s = f[i];
        if (i + 1 < n) s -= b[i] * x[i + 1];
        if (i + 2 < n) s -= c[i] * x[i + 2];
        x[i] = s / piv;
    }
    return x;
}

int count_nodes(const Eigen::ArrayXd& u) {
    const double thresh = 1e-9 * u.abs().maxCoeff();
    int nodes = 0;
    int last = 0;
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        if (std::abs(u[i]) <= thresh) continue;
        const int s = u[i] > 0.0 ? 1 : -1;
        if (last != 0 && s != last) ++nodes;
        last = s;
    }
    return nodes;
}

}  // namespace

RadialSolution solve_radial_single(const ScalarFn& potential, double mass,
                                   QuantumState state, RadialGrid grid) {
    validate(state);
    if (!potential) throw DomainError("radial solve: potential callable is empty");
    if (!(mass > 0.0)) throw DomainError("radial solve: mass must be positive");
    if (!(grid.r_max > 0.0)) throw DomainError("radial solve: r_max must be positive");
    if (grid.points < 500) throw DomainError("radial solve: grid needs at least 500 points");
    if (state.n + 1 >= grid.points)
        throw DomainError("radial solve: grid too small for the requested excitation");

    const int n = grid.points;
    const double h = grid.spacing();
    const double centrifugal = state.l * (state.l + 1) / (2.0 * mass);
    Eigen::ArrayXd r(n), diag(n);
    for (int i = 0; i < n; ++i) {
        r[i] = (i + 1) * h;
        const double veff = potential(r[i]) + centrifugal / (r[i] * r[i]);
        if (!std::isfinite(veff)) {
            std::ostringstream msg;
            msg << "radial solve: effective potential not finite at r=" << r[i];
            throw OracleError(msg.str());
        }
        diag[i] = 1.0 / (mass * h * h) + veff;
    }
    const double off = -1.0 / (2.0 * mass * h * h);

    const double lambda = kth_eigenvalue(diag, off, state.n);

    Eigen::ArrayXd u = Eigen::ArrayXd::Ones(n);
    for (int sweep = 0; sweep < 3; ++sweep) {
        u = solve_shifted(diag, off, lambda, u);
        const double norm = std::sqrt((u * u).sum());
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw OracleError("radial solve: inverse iteration collapsed");
        u /= norm;
    }
    u /= std::sqrt(h * (u * u).sum());
    Eigen::Index imax = 0;
    u.abs().maxCoeff(&imax);
    if (u[imax] < 0.0) u = -u;

    RadialSolution sol;
    sol.grid = grid;
    sol.r = std::move(r);
    sol.u = std::move(u);
    sol.energy = lambda;
    sol.norm_residual = std::abs(h * (sol.u * sol.u).sum() - 1.0);
    sol.nodes = count_nodes(sol.u);
    if (sol.nodes != state.n) {
        std::ostringstream msg;
        msg << "radial solve: eigenvector for n=" << state.n << ", l=" << state.l
            << " has " << sol.nodes << " nodes; refine the grid or pilot energy";
        throw OracleError(msg.str());
    }
    return sol;
}

RadialPair solve_radial_pair(const ScalarFn& potential, double mass, QuantumState state,
                             RadialGrid grid, double rel_tolerance) {
    if (!(rel_tolerance > 0.0)) throw DomainError("radial solve: tolerance must be positive");
    // Three levels with exactly halved spacing: i*points + (i-1) keeps every
    // coarse node on the finer grid. Two first-stage extrapolants kill the h^2
    // term; their drift is an (over-)estimate of the error left in the final
    // h^4-completed value.
    const RadialSolution base = solve_radial_single(potential, mass, state, grid);
    RadialPair pair;
    pair.coarse =
        solve_radial_single(potential, mass, state, {grid.r_max, 2 * grid.points + 1});
    pair.fine =
        solve_radial_single(potential, mass, state, {grid.r_max, 4 * grid.points + 3});
    const double r1 = pair.coarse.energy + (pair.coarse.energy - base.energy) / 3.0;
    const double r2 = pair.fine.energy + (pair.fine.energy - pair.coarse.energy) / 3.0;
    pair.energy = r2 + (r2 - r1) / 15.0;
    pair.error_estimate = std::abs(r2 - r1);
    if (pair.error_estimate > rel_tolerance * std::max(1.0, std::abs(pair.energy))) {
        std::ostringstream msg;
        msg << "radial solve: Richardson error " << pair.error_estimate
            << " exceeds tolerance for n=" << state.n << ", l=" << state.l;
        throw ConvergenceError(msg.str());
    }
    return pair;
}

RadialSolution solve_radial(const ScalarFn& potential, double mass, QuantumState state,
                            RadialGrid grid, double rel_tolerance) {
    RadialPair pair = solve_radial_pair(potential, mass, state, grid, rel_tolerance);
    RadialSolution sol = std::move(pair.fine);
    sol.energy = pair.energy;
    sol.error_estimate = pair.error_estimate;
    return sol;
}

double expectation(const RadialSolution& solution, const ScalarFn& f) {
    if (!f) throw DomainError("expectation: observable callable is empty");
    const double h = solution.grid.spacing();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < solution.r.size(); ++i) {
        const double fi = f(solution.r[i]);
        if (!std::isfinite(fi))
            throw OracleError("expectation: observable not finite on the grid");
        acc += fi * solution.u[i] * solution.u[i];
    }
    return h * acc;
}

double expectation_extrapolated(const RadialPair& pair, const ScalarFn& f) {
    const double coarse = expectation(pair.coarse, f);
    const double fine = expectation(pair.fine, f);
    return (4.0 * fine - coarse) / 3.0;
}

RadialGrid auto_grid(const ScalarFn& potential, double mass, QuantumState state,
                     double pilot_energy, int points, double safety) {
    validate(state);
    if (!(mass > 0.0)) throw DomainError("auto_grid: mass must be positive");
    if (!(safety >= 1.0)) throw DomainError("auto_grid: safety factor must be >= 1");
    if (points < 500) throw DomainError("auto_grid: grid needs at least 500 points");
    const double centrifugal = state.l * (state.l + 1) / (2.0 * mass);
    auto veff = [&](double r) { return potential(r) + centrifugal / (r * r); };

    // Outermost classically allowed radius on a log probe, then a tunnelling
    // margin of 16 decay lengths evaluated at the padded radius.
    const Eigen::ArrayXd probe = log_grid(1e-4, 1e6, 800);
    double r_turn = 1.0;
    bool found = false;
    for (Eigen::Index i = 0; i < probe.size(); ++i) {
        const double v = veff(probe[i]);
        if (std::isfinite(v) && v <= pilot_energy) {
            r_turn = probe[i];
            found = true;
        }
    }
    if (!found) r_turn = 1.0;

    const double padded = safety * r_turn;
    const double gap = veff(padded) - pilot_energy;
    double kappa = gap > 0.0 && std::isfinite(gap) ? std::sqrt(2.0 * mass * gap) : 0.0;
    if (!(kappa > 1e-8)) kappa = 1.0;
    return RadialGrid{padded + 16.0 / kappa, points};
}

}  // namespace afmet
