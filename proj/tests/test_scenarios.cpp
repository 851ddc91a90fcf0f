#include "doctest.h"

#include "afmet/scenarios.hpp"

#include "json.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace afmet;
using doctest::Approx;
using nlohmann::json;

TEST_CASE("anharmonic workup reproduces the frozen references") {
    const AnharmonicCase c = run_anharmonic(1.0, {0, 0}, 800);
    CHECK(c.N == Approx(1.5));
    CHECK(c.Y == Approx(std::pow(1.5, 2.0 / 3.0)).epsilon(1e-12));
    CHECK(c.report.afm.energy == Approx(6.969099435573).epsilon(1e-10));
    CHECK(c.x0 == Approx(0.470209703612).epsilon(1e-9));
    CHECK(c.exact_energy == Approx(6.6600339176).epsilon(1e-7));
    CHECK(c.exact_error <= 1e-7 * std::max(1.0, c.exact_energy));
    CHECK(c.report.afm.energy >= c.exact_energy);  // upper bound
    CHECK(c.report.max_energy_gap_rel <= 1e-11);
}

TEST_CASE("anharmonic exact energies rise with the deformation strength") {
    const AnharmonicCase weak = run_anharmonic(0.1, {0, 0}, 800);
    const AnharmonicCase strong = run_anharmonic(10.0, {0, 0}, 800);
    CHECK(weak.exact_energy == Approx(4.0310051043).epsilon(1e-7));
    CHECK(strong.exact_energy == Approx(13.0837053698).epsilon(1e-7));
    CHECK(weak.report.afm.energy == Approx(4.147793727171).epsilon(1e-10));
    CHECK(strong.report.afm.energy == Approx(13.810857623678).epsilon(1e-10));
    CHECK(weak.exact_energy < strong.exact_energy);
}

TEST_CASE("power-law solves match the frozen references") {
    CHECK(run_power_law_family(1.0, 4.0, BaseFamily::Harmonic, 1.5).energy ==
          Approx(2.0442606669).epsilon(1e-9));
    CHECK(run_power_law_family(1.0, 1.0, BaseFamily::Harmonic, 1.5).energy ==
          Approx(1.9655560457).epsilon(1e-9));
    CHECK(run_power_law_family(1.0, 1.0, BaseFamily::Coulomb, 1.0).energy ==
          Approx(1.5).epsilon(1e-10));
    CHECK(run_power_law_family(1.0, 2.0, BaseFamily::Coulomb, 1.0).energy ==
          Approx(std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("fixture writer emits the four documented files") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "afmet_fixture_test";
    fs::remove_all(dir);
    REQUIRE(write_fixtures(dir.string(), 2000) == 4);

    auto load = [&](const char* name) {
        std::ifstream in(dir / name);
        REQUIRE(in.good());
        return json::parse(in);
    };

    // --- anharmonic matrix ---------------------------------------------------
    {
        const json doc = load("anharmonic.json");
        CHECK(doc["oracle"]["points"] == 2000);
        CHECK(doc["oracle"]["ladder_points"].size() == 3);
        REQUIRE(doc["cases"].size() == 48);
        bool found = false;
        for (const json& c : doc["cases"]) {
            for (const char* key :
                 {"beta", "n", "l", "N", "Y", "nu0", "x0", "c1", "c2", "E_afm", "E_et_s",
                  "E_et_v", "E_exact", "exact_error", "mean_P", "mean_K", "meanfield_dev"})
                REQUIRE(c.contains(key));
            CHECK(double(c["E_afm"]) >= double(c["E_exact"]));  // upper bounds throughout
            if (c["beta"] == 1.0 && c["n"] == 0 && c["l"] == 0) {
                found = true;
                CHECK(double(c["E_afm"]) == Approx(6.969099435573).epsilon(1e-10));
                CHECK(double(c["E_exact"]) == Approx(6.6600339176).epsilon(1e-7));
                CHECK(double(c["nu0"]) == Approx(11.506842732660).epsilon(1e-9));
                CHECK(double(c["meanfield_dev"]) == Approx(0.2823898).epsilon(1e-3));
            }
        }
        CHECK(found);
    }

    // --- power-law matrix ------------------------------------------------------
    {
        const json doc = load("power_law.json");
        REQUIRE(doc["cases"].size() == 80);
        for (const json& c : doc["cases"]) {
            REQUIRE(c.contains("bound"));
            const double gap = double(c["E_afm"]) - double(c["E_exact"]);
            if (c["bound"] == "upper") CHECK(gap >= -1e-8);
            if (c["bound"] == "lower") CHECK(gap <= 1e-8);
            if (c["bound"] == "exact") CHECK(std::abs(gap) <= 1e-6);
        }
    }

    // --- perturbation study ------------------------------------------------------
    {
        const json doc = load("perturbation.json");
        REQUIRE(doc["samples"].size() == 2);
        const json& coarse = doc["samples"][0];
        const json& fine = doc["samples"][1];
        CHECK(coarse["sigma"] == 1e-2);
        CHECK(fine["sigma"] == 1e-3);
        // The oracle slope converges to <r> in the exact state, a fixed offset
        // from r0; the deviation must not grow as sigma shrinks.
        CHECK(double(coarse["oracle_deviation"]) == Approx(0.0306).epsilon(0.05));
        CHECK(double(fine["oracle_deviation"]) <= double(coarse["oracle_deviation"]));
        // The variational slope converges to r0 itself at first order.
        const double ratio =
            double(coarse["afm_deviation"]) / double(fine["afm_deviation"]);
        CHECK(ratio >= 5.0);
        CHECK(ratio <= 20.0);
    }

    // --- mean-field sweeps -------------------------------------------------------
    {
        const json doc = load("mean_field.json");
        REQUIRE(doc["n_sweep"].size() == 6);
        REQUIRE(doc["l_sweep"].size() == 6);
        // The coupling heuristic improves along l (the state leaves the region
        // where the profile diverges) ...
        for (size_t i = 1; i < doc["l_sweep"].size(); ++i)
            CHECK(double(doc["l_sweep"][i]["deviation"]) <
                  double(doc["l_sweep"][i - 1]["deviation"]));
        // ... and worsens along n at fixed l = 0.
        CHECK(double(doc["n_sweep"][5]["deviation"]) >
              double(doc["n_sweep"][0]["deviation"]));
        for (const json& e : doc["n_sweep"]) CHECK(double(e["deviation"]) > 0.0);
    }

    fs::remove_all(dir);
}
