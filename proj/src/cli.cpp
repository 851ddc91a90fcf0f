#include "afmet/cli.hpp"

#include "afmet/envelope.hpp"
#include "afmet/errors.hpp"
#include "afmet/radial_oracle.hpp"
#include "afmet/scenarios.hpp"
#include "afmet/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

namespace afmet {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr int kOraclePoints = 2000;
constexpr double kOracleRelTol = 1e-7;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.14e", x);
    return buf;
}

struct RunConfig {
    std::string potential = "anharmonic";  // anharmonic | powerlaw | base
    std::vector<double> beta = {1.0};
    std::vector<double> a = {1.0};
    std::vector<double> p = {1.0};
    std::string base = "harmonic";  // harmonic | coulomb
    double mass = 0.0;              // 0: family default (anharmonic 2, otherwise 1)
    std::string n_range = "0";
    std::string l_range = "0";
    std::vector<double> N_override;
    std::string method = "all";
    std::string format = "csv";
    std::string out_path;
    double tol = 1e-9;
    int points = kOraclePoints;
};

/// One output record; sweep context fields are meaningful only in sweeps.
struct Record {
    std::string potential, base;
    double mass = 0.0, beta = kNan, a = kNan, p = kNan;
    int n = -1, l = -1;
    double N = kNan;
    std::string method;
    double energy = kNan, nu0 = kNan, r0 = kNan;
    std::string bound;
    double stationarity_residual = kNan;
    double tolerance = kNan;
    std::string provenance;
    double e_exact = kNan, gap = kNan;
};

std::vector<int> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) return {std::stoi(text)};
        const int lo = std::stoi(text.substr(0, dots));
        const int hi = std::stoi(text.substr(dots + 2));
        if (hi < lo) throw DomainError("range upper end below lower end: " + text);
        std::vector<int> out;
        for (int v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    } catch (const std::logic_error&) {
        throw DomainError("cannot parse quantum-number range: " + text);
    }
}

std::vector<std::string> method_list(const std::string& method, bool allow_exact) {
    std::vector<std::string> out;
    if (method == "all") {
        out = {"afm", "et-s", "et-v"};
        if (allow_exact) out.push_back("exact");
    } else if (method == "exact" && !allow_exact) {
        throw DomainError(
            "method 'exact' needs integer quantum numbers, not a continuous N override");
    } else {
        out = {method};
    }
    return out;
}

struct PotentialInstance {
    TargetPotential target;
    double beta = kNan, a = kNan, p = kNan;
};

std::vector<PotentialInstance> build_potentials(const RunConfig& cfg) {
    const BaseFamily family =
        cfg.base == "harmonic" ? BaseFamily::Harmonic : BaseFamily::Coulomb;
    std::vector<PotentialInstance> out;
    if (cfg.potential == "anharmonic") {
        for (double b : cfg.beta) {
            const double mass = cfg.mass > 0.0 ? cfg.mass : 2.0;
            out.push_back({TargetPotential::anharmonic(b, mass), b, kNan, kNan});
        }
    } else if (cfg.potential == "powerlaw") {
        const double mass = cfg.mass > 0.0 ? cfg.mass : 1.0;
        for (double a : cfg.a)
            for (double p : cfg.p)
                out.push_back({TargetPotential::power_law(a, p, family, mass), kNan, a, p});
    } else if (cfg.potential == "base") {
        const double mass = cfg.mass > 0.0 ? cfg.mass : 1.0;
        for (double a : cfg.a)
            out.push_back({TargetPotential::base_multiple(a, family, mass), kNan, a, kNan});
    } else {
        throw DomainError("unknown potential family: " + cfg.potential);
    }
    return out;
}

std::string describe_state(const PotentialInstance& inst, int n, int l, double N) {
    std::ostringstream s;
    s << inst.target.name() << " n=" << n << " l=" << l << " N=" << N;
    return s.str();
}

double oracle_energy(const TargetPotential& target, QuantumState st, double pilot,
                     int points, std::string* provenance) {
    auto v = [&target](double r) { return target.V(r); };
    const RadialGrid grid = auto_grid(v, target.base().mass(), st, pilot, points);
    const RadialPair pair =
        solve_radial_pair(v, target.base().mass(), st, grid, kOracleRelTol);
    if (provenance) {
        std::ostringstream s;
        s << "oracle(points=" << points << ",levels=3,r_max=" << fmt(grid.r_max)
          << ",richardson)";
        *provenance = s.str();
    }
    return pair.energy;
}

Record solve_one(const PotentialInstance& inst, int n, int l, double N,
                 const std::string& method, const RunConfig& cfg, double pilot) {
    Record rec;
    rec.potential = cfg.potential;
    rec.base = cfg.base;
    rec.mass = inst.target.base().mass();
    rec.beta = inst.beta;
    rec.a = inst.a;
    rec.p = inst.p;
    rec.n = n;
    rec.l = l;
    rec.N = N;
    rec.method = method;
    rec.tolerance = method == "exact" ? kOracleRelTol : cfg.tol;

    const bool closed = inst.target.is_linear() || inst.target.has_closed_inversion();
    const std::string inversion =
        inst.target.is_linear() ? "affine target, exact"
                                : (closed ? "closed-form inversion" : "numeric inversion");
    if (method == "afm") {
        const ApproxSolution s = afm_minimize({inst.target, N, cfg.tol});
        rec.energy = s.energy;
        rec.nu0 = s.nu0;
        rec.r0 = s.r0;
        rec.bound = to_string(s.bound);
        rec.stationarity_residual = s.diagnostics.at("stationarity_residual");
        rec.provenance = inversion;
    } else if (method == "et-s") {
        const ApproxSolution s = et_minimize_s(inst.target, N, cfg.tol);
        rec.energy = s.energy;
        rec.nu0 = s.nu0;
        rec.r0 = s.r0;
        rec.bound = to_string(s.bound);
        rec.stationarity_residual = s.diagnostics.at("stationarity_residual");
        rec.provenance = inversion;
    } else if (method == "et-v") {
        const ApproxSolution s = et_minimize_v(inst.target, N, cfg.tol);
        rec.energy = s.energy;
        rec.nu0 = s.nu0;
        rec.r0 = s.r0;
        rec.bound = to_string(s.bound);
        rec.stationarity_residual = s.diagnostics.at("stationarity_residual");
        rec.provenance = inversion;
    } else if (method == "exact") {
        rec.energy = oracle_energy(inst.target, {n, l}, pilot, cfg.points, &rec.provenance);
        rec.bound = "reference";
    } else {
        throw DomainError("unknown method: " + method);
    }
    return rec;
}

void emit_csv(const std::vector<Record>& records, bool sweep, std::ostream& out) {
    if (sweep)
        out << "potential,base,mass,beta,a,p,n,l,N,method,energy,nu0,r0,bound,"
               "stationarity_residual,tolerance,provenance,E_exact,gap\n";
    else
        out << "n,l,N,method,energy,nu0,r0,bound,stationarity_residual,tolerance,"
               "provenance\n";
    for (const Record& r : records) {
        if (sweep)
            out << r.potential << ',' << r.base << ',' << fmt(r.mass) << ',' << fmt(r.beta)
                << ',' << fmt(r.a) << ',' << fmt(r.p) << ',';
        out << r.n << ',' << r.l << ',' << fmt(r.N) << ',' << r.method << ','
            << fmt(r.energy) << ',' << fmt(r.nu0) << ',' << fmt(r.r0) << ',' << r.bound
            << ',' << fmt(r.stationarity_residual) << ',' << fmt(r.tolerance) << ','
            << r.provenance;
        if (sweep) out << ',' << fmt(r.e_exact) << ',' << fmt(r.gap);
        out << '\n';
    }
}

void emit_json(const std::vector<Record>& records, bool sweep, std::ostream& out) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const Record& r : records) {
        nlohmann::ordered_json j;
        if (sweep) {
            j["potential"] = r.potential;
            j["base"] = r.base;
            j["mass"] = r.mass;
            j["beta"] = r.beta;
            j["a"] = r.a;
            j["p"] = r.p;
        }
        j["n"] = r.n;
        j["l"] = r.l;
        j["N"] = r.N;
        j["method"] = r.method;
        j["energy"] = r.energy;
        j["nu0"] = r.nu0;
        j["r0"] = r.r0;
        j["bound"] = r.bound;
        j["stationarity_residual"] = r.stationarity_residual;
        j["tolerance"] = r.tolerance;
        j["provenance"] = r.provenance;
        if (sweep) {
            j["E_exact"] = r.e_exact;
            j["gap"] = r.gap;
        }
        doc.push_back(std::move(j));
    }
    out << doc.dump(2) << '\n';
}

int emit(const std::vector<Record>& records, bool sweep, const RunConfig& cfg,
         std::ostream& out, std::ostream& err) {
    std::ostringstream buffer;
    if (cfg.format == "csv")
        emit_csv(records, sweep, buffer);
    else
        emit_json(records, sweep, buffer);
    if (cfg.out_path.empty()) {
        out << buffer.str();
        return 0;
    }
    std::ofstream file(cfg.out_path);
    if (!file) {
        err << "error: cannot open output file: " << cfg.out_path << '\n';
        return 3;
    }
    file << buffer.str();
    return 0;
}

/// Cross product of the configured parameters; `sweep` additionally computes
/// the exact reference and the gap column for every record.
int run_solve_or_sweep(const RunConfig& cfg, bool sweep, std::ostream& out,
                       std::ostream& err) {
    std::vector<PotentialInstance> potentials;
    std::vector<int> ns, ls;
    std::vector<std::string> methods;
    try {
        potentials = build_potentials(cfg);
        ns = parse_range(cfg.n_range);
        ls = parse_range(cfg.l_range);
        methods = method_list(cfg.method, cfg.N_override.empty());
        if (!(cfg.tol > 0.0)) throw DomainError("tolerance must be positive");
        if (cfg.points < 500) throw DomainError("oracle grid needs at least 500 points");
        if (!sweep) {
            const size_t states =
                cfg.N_override.empty() ? ns.size() * ls.size() : cfg.N_override.size();
            if (potentials.size() * states != 1)
                throw DomainError(
                    "solve takes a single state and potential; use sweep for ranges");
        } else {
            const size_t combos = potentials.size() *
                                  (cfg.N_override.empty() ? ns.size() * ls.size()
                                                          : cfg.N_override.size());
            if (combos < 2)
                throw DomainError("sweep needs at least one ranged parameter");
        }
    } catch (const std::exception& e) {
        err << "configuration error: " << e.what() << '\n';
        return 2;
    }

    std::vector<Record> records;
    std::string current;
    try {
        for (const PotentialInstance& inst : potentials) {
            struct StatePoint {
                int n, l;
                double N;
            };
            std::vector<StatePoint> states;
            if (cfg.N_override.empty()) {
                for (int n : ns)
                    for (int l : ls)
                        states.push_back(
                            {n, l, inst.target.base().principal_number({n, l})});
            } else {
                for (double N : cfg.N_override) states.push_back({-1, -1, N});
            }
            for (const StatePoint& st : states) {
                current = describe_state(inst, st.n, st.l, st.N);
                const double pilot = afm_minimize({inst.target, st.N, cfg.tol}).energy;
                double e_exact = kNan;
                if (sweep && st.n >= 0)
                    e_exact = oracle_energy(inst.target, {st.n, st.l}, pilot, cfg.points,
                                            nullptr);
                for (const std::string& m : methods) {
                    Record rec = solve_one(inst, st.n, st.l, st.N, m, cfg, pilot);
                    if (sweep) {
                        rec.e_exact = e_exact;
                        rec.gap = rec.energy - e_exact;
                    }
                    records.push_back(std::move(rec));
                }
            }
        }
    } catch (const std::exception& e) {
        err << "solver error at " << current << ": " << e.what() << '\n';
        return 3;
    }
    return emit(records, sweep, cfg, out, err);
}

int run_verify(const std::string& suite, std::ostream& out, std::ostream& err) {
    std::vector<ClaimResult> results;
    try {
        results = run_verification(suite);
    } catch (const DomainError& e) {
        err << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "solver error: " << e.what() << '\n';
        return 3;
    }
    bool all_pass = true;
    for (const ClaimResult& c : results) {
        out << format_claim(c) << '\n';
        all_pass = all_pass && c.pass;
    }
    out << (all_pass ? "all claims passed" : "some claims FAILED") << " ("
        << results.size() << " run)\n";
    return all_pass ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Variational bound-state energies via auxiliary fields and envelopes"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto add_common = [&](CLI::App* cmd, bool ranged) {
        cmd->add_option("--potential", cfg.potential, "Potential family")
            ->check(CLI::IsMember({"anharmonic", "powerlaw", "base"}));
        auto* beta = cmd->add_option("--beta", cfg.beta, "Anharmonic strength beta");
        auto* a = cmd->add_option("--a", cfg.a, "Strength: power-law prefactor or base multiple");
        auto* p = cmd->add_option("--p", cfg.p, "Power-law exponent");
        auto* N = cmd->add_option("--N", cfg.N_override,
                                  "Continuous principal-number override(s)");
        for (auto* opt : {beta, a, p, N}) opt->delimiter(',');
        if (!ranged)
            for (auto* opt : {beta, a, p, N}) opt->expected(1);
        cmd->add_option("--base", cfg.base, "Base shape family")
            ->check(CLI::IsMember({"harmonic", "coulomb"}));
        cmd->add_option("--mass", cfg.mass, "Particle mass (default: family convention)");
        cmd->add_option("--n", cfg.n_range, "Radial quantum number (or lo..hi)");
        cmd->add_option("--l", cfg.l_range, "Orbital quantum number (or lo..hi)");
        cmd->add_option("--method", cfg.method, "Solution method")
            ->check(CLI::IsMember({"afm", "et-s", "et-v", "exact", "all"}));
        cmd->add_option("--format", cfg.format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", cfg.out_path, "Output file (default: stdout)");
        cmd->add_option("--tol", cfg.tol, "Stationarity tolerance");
        cmd->add_option("--points", cfg.points, "Oracle grid points (coarse grid)");
    };

    CLI::App* solve = app.add_subcommand("solve", "Solve one state with one or all methods");
    add_common(solve, false);
    CLI::App* sweep =
        app.add_subcommand("sweep", "Cross-product sweep with exact reference and gaps");
    add_common(sweep, true);

    std::string suite = "all";
    CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("--suite", suite, "Claim suite")
        ->check(CLI::IsMember(
            {"equivalence", "bounds", "scaling", "tangency", "perturbation", "all"}));

    std::string fixture_dir = "fixtures";
    int fixture_points = kOraclePoints;
    CLI::App* fixtures =
        app.add_subcommand("fixtures", "Regenerate the fixture documents (JSON)");
    fixtures->add_option("--out", fixture_dir, "Fixture directory");
    fixtures->add_option("--points", fixture_points, "Oracle grid points (coarse grid)");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("afmet");
    for (const std::string& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "configuration error: " << e.what() << '\n';
        return 2;
    }

    if (solve->parsed()) return run_solve_or_sweep(cfg, false, out, err);
    if (sweep->parsed()) return run_solve_or_sweep(cfg, true, out, err);
    if (verify->parsed()) return run_verify(suite, out, err);
    if (fixtures->parsed()) {
        try {
            const int files = write_fixtures(fixture_dir, fixture_points);
            out << "wrote " << files << " fixture files to " << fixture_dir << '\n';
            return 0;
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
            return 3;
        }
    }
    err << "configuration error: no subcommand\n";
    return 2;
}

}  // namespace afmet
