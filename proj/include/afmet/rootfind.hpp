#pragma once

#include "afmet/errors.hpp"

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <vector>

namespace afmet {

inline Eigen::ArrayXd log_grid(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2)
        throw DomainError("log_grid needs 0 < lo < hi and n >= 2");
    Eigen::ArrayXd g(n);
    const double a = std::log(lo), b = std::log(hi);
    for (int i = 0; i < n; ++i)
        g[i] = std::exp(a + (b - a) * i / (n - 1));
    return g;
}

inline Eigen::ArrayXd linear_grid(double lo, double hi, int n) {
    if (!(hi > lo) || n < 2)
        throw DomainError("linear_grid needs lo < hi and n >= 2");
    Eigen::ArrayXd g(n);
    for (int i = 0; i < n; ++i)
        g[i] = lo + (hi - lo) * i / (n - 1);
    return g;
}

struct RootResult {
    double x;
    double f;
    int iterations;
};

/// Newton iteration safeguarded by a sign-change bracket [a, b].
/// Falls back to bisection whenever the Newton step leaves the bracket or stalls.
template <class F, class DF>
RootResult newton_bisect(F&& f, DF&& df, double a, double b, double fa, double fb,
                         double xtol_rel = 1e-15, int max_iter = 200) {
    if (fa == 0.0) return {a, 0.0, 0};
    if (fb == 0.0) return {b, 0.0, 0};
    if (std::signbit(fa) == std::signbit(fb))
        throw ConvergenceError("newton_bisect: endpoints do not bracket a root");

    double x = 0.5 * (a + b);
    double fx = f(x);
    double best_x = x, best_f = std::abs(fx);
    int it = 0;
    for (; it < max_iter; ++it) {
        if (fx == 0.0) return {x, 0.0, it};
        if (std::signbit(fx) == std::signbit(fa)) {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
        const double width = b - a;
        if (width <= xtol_rel * (std::abs(a) + std::abs(b)) * 0.5 + 1e-300) break;

        double xn = x;
        const double d = df(x);
        bool newton_ok = false;
        if (std::isfinite(d) && d != 0.0) {
            xn = x - fx / d;
            newton_ok = std::isfinite(xn) && xn > a && xn < b;
        }
        x = newton_ok ? xn : 0.5 * (a + b);
        fx = f(x);
        if (!std::isfinite(fx)) {  // retreat to plain bisection
            x = 0.5 * (a + b);
            fx = f(x);
            if (!std::isfinite(fx))
                throw ConvergenceError("newton_bisect: objective not finite inside bracket");
        }
        if (std::abs(fx) < best_f) {
            best_f = std::abs(fx);
            best_x = x;
        }
    }
    return {best_x, f(best_x), it};
}

/// Solve f(x) = target on the open interval (lo, hi) for strictly monotone f.
/// Brackets by geometric expansion from the seed, then refines with newton_bisect.
/// Only intervals of the forms (0, inf), (-inf, 0) and finite mixes are needed here.
template <class F, class DF>
double invert_monotone(F&& f, DF&& df, double target, double lo, double hi, double seed,
                       double xtol_rel = 1e-15) {
    auto toward_hi = [&](double x) {
        if (hi >= 1e307) return x >= 1.0 ? x * 4.0 : (x <= -1e-307 ? -x : x + 1.0);
        return x + 0.5 * (hi - x);
    };
    auto toward_lo = [&](double x) {
        if (lo <= -1e307) return x <= -1.0 ? x * 4.0 : (x >= 1e-307 ? -x : x - 1.0);
        if (lo == 0.0) return x * 0.25;
        return x - 0.5 * (x - lo);
    };

    double x = seed;
    if (!(x > lo && x < hi)) x = lo == 0.0 ? 1.0 : (hi == 0.0 ? -1.0 : 0.5 * (lo + hi));
    double fx = f(x);
    if (!std::isfinite(fx))
        throw ConvergenceError("invert_monotone: seed evaluation not finite");
    const bool increasing = [&] {
        const double xp = toward_hi(x);
        const double fp = f(xp);
        if (fp == fx) {
            const double xm = toward_lo(x);
            return f(xm) < fx;
        }
        return fp > fx;
    }();

    double a = x, b = x, fa = fx, fb = fx;
    auto g = [&](double t) { return increasing ? t : -t; };  // reduce to increasing case
    const double gt = g(target);
    int guard = 0;
    while (g(fa) > gt) {
        a = toward_lo(a);
        fa = f(a);
        if (!std::isfinite(fa) || ++guard > 600)
            throw DomainError("invert_monotone: target below the function's range");
    }
    guard = 0;
    while (g(fb) < gt) {
        b = toward_hi(b);
        fb = f(b);
        if (!std::isfinite(fb) || ++guard > 600)
            throw DomainError("invert_monotone: target above the function's range");
    }
    if (a == b) return a;
    auto resid = [&](double t) { return f(t) - target; };
    const auto root = newton_bisect(resid, df, std::min(a, b), std::max(a, b),
                                    resid(std::min(a, b)), resid(std::max(a, b)), xtol_rel);
    return root.x;
}

enum class ExtremumRule { Min, Max };

struct StationaryResult {
    double x;               ///< stationary parameter
    double value;           ///< objective at x
    double deriv_residual;  ///< |dphi| left at x
    int candidates;         ///< stationary points detected on the scan grid
    int iterations;
};

/// Locate a stationary point of phi on a scan grid: detect sign changes of dphi,
/// refine each with safeguarded Newton (d2phi as the Newton derivative), and pick
/// the root whose objective value is closest to the grid-scan extremum of phi.
template <class Phi, class DPhi, class D2Phi>
StationaryResult find_stationary(Phi&& phi, DPhi&& dphi, D2Phi&& d2phi,
                                 const Eigen::ArrayXd& grid, ExtremumRule rule,
                                 double xtol_rel = 1e-15) {
    struct Node {
        double x, d;
    };
    std::vector<Node> nodes;
    nodes.reserve(static_cast<size_t>(grid.size()));
    double scan_extreme = std::numeric_limits<double>::quiet_NaN();
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        const double d = dphi(x);
        if (!std::isfinite(d)) continue;
        nodes.push_back({x, d});
        const double p = phi(x);
        if (!std::isfinite(p)) continue;
        if (std::isnan(scan_extreme) || (rule == ExtremumRule::Min ? p < scan_extreme
                                                                   : p > scan_extreme))
            scan_extreme = p;
    }
    if (nodes.size() < 2)
        throw NoExtremumError("stationary-point scan: admissible interval is empty");

    std::vector<RootResult> roots;
    int iters = 0;
    for (size_t i = 0; i + 1 < nodes.size(); ++i) {
        const auto& L = nodes[i];
        const auto& R = nodes[i + 1];
        if (L.d == 0.0) {
            roots.push_back({L.x, 0.0, 0});
            continue;
        }
        if (std::signbit(L.d) == std::signbit(R.d)) continue;
        auto r = newton_bisect(dphi, d2phi, L.x, R.x, L.d, R.d, xtol_rel);
        iters += r.iterations;
        roots.push_back(r);
    }
    if (!nodes.empty() && nodes.back().d == 0.0) roots.push_back({nodes.back().x, 0.0, 0});
    if (roots.empty())
        throw NoExtremumError(
            "energy function has no stationary point on the admissible interval");

    size_t pick = 0;
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < roots.size(); ++i) {
        const double p = phi(roots[i].x);
        const double dist = std::isnan(scan_extreme) ? 0.0 : std::abs(p - scan_extreme);
        if (dist < best) {
            best = dist;
            pick = i;
        }
    }
    const double x = roots[pick].x;
    return {x, phi(x), std::abs(dphi(x)), static_cast<int>(roots.size()), iters};
}

}  // namespace afmet
