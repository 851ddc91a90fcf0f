#include "doctest.h"

#include "afmet/envelope.hpp"
#include "afmet/errors.hpp"
#include "afmet/rootfind.hpp"

#include <cmath>

using namespace afmet;
using doctest::Approx;

TEST_CASE("tangential potential touches value and slope at the contact radius") {
    TargetPotential t = TargetPotential::anharmonic(1.0);
    for (double contact : {0.3, 0.8, 2.5}) {
        const TangentialPotential tp = tangential_at(t, contact);
        CHECK(tp.slope == Approx(t.K(contact)));
        CHECK(tp(t.base().P(contact)) == Approx(t.V(contact)).epsilon(1e-13));
        CHECK(tp.slope * t.base().P_prime(contact) ==
              Approx(t.V_prime(contact)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(tangential_at(t, 0.0), DomainError);
}

TEST_CASE("defect coefficient carries the curvature sign of the deformation") {
    TargetPotential concave = TargetPotential::anharmonic(4.0);
    TargetPotential convex = TargetPotential::power_law(1.0, 4.0, BaseFamily::Harmonic);
    for (double contact : {0.5, 1.3, 3.4}) {
        CHECK(tangency_defect_coefficient(concave, contact) < 0.0);
        CHECK(tangency_defect_coefficient(convex, contact) > 0.0);
        // quadratic coefficient of the defect, against a small finite difference
        for (const TargetPotential* t : {&concave, &convex}) {
            const TangentialPotential tp = tangential_at(*t, contact);
            const double eps = 1e-5;
            const double defect =
                t->V(contact + eps) - tp(t->base().P(contact + eps));
            CHECK(defect / (eps * eps) ==
                  Approx(tangency_defect_coefficient(*t, contact)).epsilon(1e-3));
        }
    }
}

TEST_CASE("kinetic sample satisfies the Legendre identity") {
    for (BaseFamily fam : {BaseFamily::Harmonic, BaseFamily::Coulomb}) {
        BasePotential base(fam, 1.3);
        for (double v : {0.4, 2.0, 11.0}) {
            const KineticPotentialSample ks = kinetic_sample(base, 2.5, v);
            CHECK(ks.v == Approx(v));
            CHECK(ks.k == Approx(base.energy_dnu(v, 2.5)));
            CHECK(ks.s + v * ks.k == Approx(base.energy(v, 2.5)).epsilon(1e-13));
        }
    }
}

TEST_CASE("mean-kinetic minimization reproduces the coupling extremization") {
    TargetPotential t = TargetPotential::anharmonic(1.0);
    const ApproxSolution s = et_minimize_s(t, 1.5, 1e-9);
    CHECK(s.method == "et-s");
    CHECK(s.energy == Approx(6.969099435573).epsilon(1e-10));
    CHECK(s.nu0 == Approx(11.506842732660).epsilon(1e-9));
    CHECK(s.r0 == Approx(0.470209703612).epsilon(1e-9));
    CHECK(s.bound == BoundDirection::UpperBound);
    // the objective at the reported mean kinetic energy equals the minimum
    const double s0 = s.diagnostics.at("mean_kinetic");
    CHECK(et_energy_over_s(t, 1.5, s0) == Approx(s.energy).epsilon(1e-13));
    CHECK(et_energy_over_s(t, 1.5, 0.5 * s0) > s.energy);
    CHECK(et_energy_over_s(t, 1.5, 2.0 * s0) > s.energy);
}

TEST_CASE("the s-objective is a minimum for convex deformations too") {
    TargetPotential t = TargetPotential::power_law(1.0, 4.0, BaseFamily::Harmonic);
    const ApproxSolution s = et_minimize_s(t, 1.5, 1e-9);
    CHECK(s.energy == Approx(2.0442606669).epsilon(1e-9));
    CHECK(s.bound == BoundDirection::LowerBound);
    const double s0 = s.diagnostics.at("mean_kinetic");
    CHECK(et_energy_over_s(t, 1.5, 0.5 * s0) > s.energy);
    CHECK(et_energy_over_s(t, 1.5, 2.0 * s0) > s.energy);
}

TEST_CASE("coupling-variable envelope energy equals the auxiliary-field energy pointwise") {
    // The two sides run through different compositions (V o I versus g o A),
    // so agreement checks the closed forms against each other.  Couplings from
    // radii around the contact point are well conditioned and must agree to
    // near machine precision; towards the edges of the admissible domain both
    // evaluations cancel huge intermediates, so only a conditioning-limited
    // agreement is meaningful there.
    for (double beta : {0.1, 1.0, 10.0}) {
        TargetPotential t = TargetPotential::anharmonic(beta);
        const AfmProblem pb{t, 4.5, 1e-9};
        const double r0 = afm_minimize(pb).r0;
        const Eigen::ArrayXd band = log_grid(r0 / 4.0, 4.0 * r0, 64);
        for (Eigen::Index i = 0; i < band.size(); ++i) {
            const double nu = t.K(band[i]);
            CHECK(et_energy_over_v(t, 4.5, nu) ==
                  Approx(afm_energy_at(pb, nu)).epsilon(1e-12));
        }
        const Eigen::ArrayXd full = coupling_scan_grid(t, 64);
        for (Eigen::Index i = 0; i < full.size(); ++i) {
            const double a = afm_energy_at(pb, full[i]);
            const double b = et_energy_over_v(t, 4.5, full[i]);
            CHECK(std::abs(a - b) <= 1e-6 * std::max(1.0, std::abs(a)));
        }
    }
}

TEST_CASE("principal form agrees with the envelope energy only at stationarity") {
    TargetPotential t = TargetPotential::anharmonic(1.0);
    const ApproxSolution sol = et_minimize_v(t, 1.5, 1e-9);
    const double v0 = sol.nu0;
    CHECK(et_energy_over_v_principal(t, 1.5, v0) == Approx(sol.energy).epsilon(1e-9));
    const double off = et_energy_over_v_principal(t, 1.5, 2.0 * v0) -
                       et_energy_over_v(t, 1.5, 2.0 * v0);
    CHECK(std::abs(off) > 1e-3);  // genuinely different functions off-stationarity
}

TEST_CASE("coupling-variable minimizer reports the Legendre link") {
    TargetPotential t = TargetPotential::anharmonic(10.0);
    const double N = t.base().principal_number({2, 1});
    const ApproxSolution v = et_minimize_v(t, N, 1e-9);
    const ApproxSolution a = afm_minimize({t, N, 1e-9});
    CHECK(v.method == "et-v");
    CHECK(v.energy == Approx(a.energy).epsilon(1e-13));
    CHECK(v.nu0 == Approx(a.nu0).epsilon(1e-12));
    CHECK(v.diagnostics.at("legendre_residual") <= 1e-8);
    CHECK(v.diagnostics.at("principal_form_gap") <= 1e-8);
}

TEST_CASE("equivalence report ties the three methods together") {
    for (double beta : {0.1, 10.0}) {
        TargetPotential t = TargetPotential::anharmonic(beta);
        const double N = t.base().principal_number({1, 2});
        const EquivalenceReport rep = equivalence_report(t, N, 1e-9);
        CHECK(rep.max_energy_gap_rel <= 1e-11);
        CHECK(rep.coupling_gap <= 1e-8 * rep.afm.nu0);
        CHECK(rep.t0 == Approx(rep.afm.r0));
        CHECK(rep.tangency_value_residual <= 1e-10 * std::abs(t.V(rep.t0)));
        CHECK(rep.tangency_slope_residual <= 1e-8 * std::abs(t.V_prime(rep.t0)));
    }
}

TEST_CASE("affine targets are exact in every envelope form") {
    TargetPotential osc = TargetPotential::base_multiple(1.0, BaseFamily::Harmonic, 2.0);
    const double N = osc.base().principal_number({1, 0});  // 3.5
    for (const ApproxSolution& sol : {et_minimize_s(osc, N), et_minimize_v(osc, N)}) {
        CHECK(sol.energy == Approx(N).epsilon(1e-12));  // eps = N sqrt(2*1/2)
        CHECK(sol.bound == BoundDirection::Exact);
    }
    CHECK(et_energy_over_v(osc, N, 123.0) == Approx(N));

    TargetPotential hyd = TargetPotential::base_multiple(1.0, BaseFamily::Coulomb, 1.0);
    const ApproxSolution sol = et_minimize_s(hyd, 1.0);
    CHECK(sol.energy == Approx(-0.5).epsilon(1e-12));
    CHECK(sol.bound == BoundDirection::Exact);
}

TEST_CASE("indeterminate curvature is rejected before any envelope solve") {
    TargetPotential::Analytic fn;
    fn.g = [](double y) { return y + std::sin(y); };
    fn.g_prime = [](double y) { return 1.0 + std::cos(y); };
    fn.g_second = [](double y) { return -std::sin(y); };
    TargetPotential wobble(fn, BasePotential(BaseFamily::Harmonic, 1.0),
                           {0.0, BasePotential::kInf}, "wobble");
    CHECK_THROWS_AS(et_minimize_s(wobble, 1.5), MonotonicityError);
    CHECK_THROWS_AS(et_minimize_v(wobble, 1.5), MonotonicityError);
}

TEST_CASE("envelope input guards") {
    TargetPotential t = TargetPotential::anharmonic(1.0);
    CHECK_THROWS_AS(et_minimize_s(t, 0.0), DomainError);
    CHECK_THROWS_AS(et_minimize_v(t, 1.5, -1.0), DomainError);
    CHECK_THROWS_AS(et_minimize_s(t, 1.5, 1e-9, 2), DomainError);
    CHECK_THROWS_AS(et_energy_over_s(t, -1.0, 1.0), DomainError);
}
