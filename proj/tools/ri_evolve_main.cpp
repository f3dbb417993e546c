// ri-evolve: scenario runs, parameter sweeps, hysteresis reproduction, and
// verification suites for the rate-independent evolution solvers.
//
// Exit codes: 0 success, 1 requested check failed, 2 config error,
// 3 solver guard violation.
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>

#include "rievolve/config.hpp"
#include "rievolve/errors.hpp"
#include "rievolve/io.hpp"
#include "rievolve/ode.hpp"
#include "rievolve/pde.hpp"
#include "rievolve/verify.hpp"

namespace {

using namespace rievolve;

struct CommonOpts {
    std::string energy = "cubic_paper";
    std::string loading = "paper_f";
    double bracket_lo = 1.0; // lo >= hi means "use the energy default"
    double bracket_hi = -1.0;
    unsigned long long seed = 42;
};

EnergyLandscape make_energy(const CommonOpts& c, const Loading& loading) {
    EnergyLandscape land = energy_by_spec(c.energy, c.bracket_lo, c.bracket_hi);
    if (!(c.bracket_lo < c.bracket_hi))
        land.expand_bracket_to_cover(loading.f_min(), loading.f_max());
    return land;
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

void print_reports(const std::vector<CheckReport>& reports) {
    for (const auto& r : reports)
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.check << " worst=" << r.worst
                  << " tol=" << r.tol << (r.note.empty() ? "" : " (" + r.note + ")") << "\n";
}

Loading loading_from_samples(const std::vector<double>& times, const std::vector<double>& fs) {
    std::vector<std::pair<double, double>> bp;
    bp.emplace_back(times.front(), fs.front());
    for (std::size_t k = 1; k + 1 < times.size(); ++k) {
        double dl = fs[k] - fs[k - 1];
        double dr = fs[k + 1] - fs[k];
        if ((dl > 0) != (dr > 0) || (dl < 0) != (dr < 0)) bp.emplace_back(times[k], fs[k]);
    }
    bp.emplace_back(times.back(), fs.back());
    if (bp.front().first != 0.0) {
        for (auto& p : bp) p.first -= bp.front().first;
    }
    return Loading(std::move(bp));
}

int thread_cap() {
    if (const char* env = std::getenv("RI_EVOLVE_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return omp_get_max_threads();
}

struct OdeOpts {
    CommonOpts common;
    std::string scheme = "mm";
    std::size_t steps = 16000;
    double eps = 1e-3;
    double h = 0.0;
    std::vector<double> eps_seq = {1e-1, 1e-2, 1e-3};
    double u0 = 0.0;
    std::size_t scan_points = 20001;
    std::size_t resolution = 100000;
    std::string out = "traj.csv";
    std::string report;
    std::string envelope_out;
    bool check = true;
};

int run_ode(const OdeOpts& o) {
    Loading loading = loading_by_spec(o.common.loading);
    print_warnings(loading.warnings());
    EnergyLandscape land = make_energy(o.common, loading);
    if (!o.envelope_out.empty())
        write_envelope_csv(o.envelope_out, land, land.monotone_envelopes(o.resolution));

    std::vector<CheckReport> reports;
    if (o.scheme == "mm") {
        MMParams mm;
        mm.steps = o.steps;
        mm.scan_points = o.scan_points;
        Trajectory traj = run_minimizing_movements(land, loading, mm, o.u0);
        traj.jumps = annotate_jumps(traj, land.gap_components(o.resolution));
        for (const auto& j : traj.jumps)
            std::cout << "jump at t=" << j.t << " u: " << j.u_before << " -> " << j.u_after
                      << "\n";
        write_trajectory_csv(o.out, traj);
        if (o.check) reports = suite_mm_lemmas(traj, land, loading, 1e-7);
    } else if (o.scheme == "vv") {
        VVParams vv;
        vv.eps = o.eps;
        vv.h = o.h;
        Trajectory traj = run_viscous(land, loading, vv, o.u0);
        write_trajectory_csv(o.out, traj);
        if (o.check) reports = suite_vv_lemmas(traj, land, loading, 0.05, 0.01);
    } else if (o.scheme == "vv_limit") {
        VVParams vv;
        vv.eps_sequence = o.eps_seq;
        VVLimitResult res = vanishing_viscosity_limit(land, loading, vv, o.u0);
        write_trajectory_csv(o.out, res.limit);
        if (o.check) {
            reports = suite_vv_lemmas(res.limit, land, loading, 0.05, 0.01);
            reports.push_back(check_monotone_in_eps(res.per_eps, res.eps_values,
                                                    10.0 * vv.root_tol));
        }
    } else {
        throw ConfigError("unknown scheme: " + o.scheme);
    }

    print_reports(reports);
    if (!o.report.empty()) write_report_json(o.report, reports);
    return all_pass(reports) ? 0 : 1;
}

struct PdeOpts {
    std::string scenario = "levelset_mcf";
    std::size_t nx = 128;
    std::string dt = "auto";
    double T = 0.25;
    std::size_t snapshots = 10;
    double reg_eps = 1e-3;
    double sigma = -1.0;
    int n_dim = 2;
    double r0 = 2.0;
    std::string forcing = "zero";
    std::string dissipation; // empty: the scenario's standard map
    std::string out = "fields";

    double dt_value() const {
        if (dt.empty() || dt == "auto") return 0.0;
        try {
            return std::stod(dt);
        } catch (const std::exception&) {
            throw ConfigError("--dt expects a number or 'auto': " + dt);
        }
    }
};

std::function<double(double, double, double)> forcing_by_spec(const std::string& spec) {
    if (spec == "zero") return {};
    if (spec.rfind("const:", 0) == 0) {
        double v = std::stod(spec.substr(6));
        return [v](double, double, double) { return v; };
    }
    if (spec == "disk_cubed") {
        // Bounded by 1 + (t (1 - |x|^2))^3 on the unit disk, zero outside.
        return [](double x, double y, double t) {
            double r2 = x * x + y * y;
            if (r2 >= 1.0) return 0.0;
            double m = t * (1.0 - r2);
            return 1.0 + 0.9 * m * m * m;
        };
    }
    throw ConfigError("unknown forcing spec: " + spec);
}

int run_pde_cmd(const PdeOpts& o) {
    ScenarioKind kind = scenario_by_name(o.scenario);
    if (kind == ScenarioKind::mcf_radial) {
        double dt = o.dt_value() > 0.0 ? o.dt_value() : 1e-4;
        RadialResult res = radial_mcf_run(o.n_dim, o.r0, o.reg_eps, dt, o.T);
        std::filesystem::create_directories(o.out);
        std::string path = (std::filesystem::path(o.out) / "radius.csv").string();
        write_trajectory_csv(path, res.radius);
        std::cout << (res.collapsed ? "collapse" : "stationary");
        if (res.collapsed) std::cout << " hit_time=" << res.hit_time;
        std::cout << " r_final=" << res.radius.values.back() << "\n";
        return 0;
    }

    PDEScenario sc;
    sc.kind = kind;
    sc.reg_eps = o.reg_eps;
    sc.sigma = o.sigma;
    sc.dt = o.dt_value();
    sc.forcing = forcing_by_spec(o.forcing);

    Grid grid;
    Field u0;
    switch (kind) {
    case ScenarioKind::sticktion_heat:
        sc.dissipation = DissipationMap::sticktion();
        grid = Grid::centered(1, o.nx, 0.5);
        u0 = Field::zeros(grid);
        break;
    case ScenarioKind::nonconvex_cubed: {
        sc.dissipation = DissipationMap::sign_subdifferential();
        grid = Grid::centered(2, o.nx, 1.0);
        u0 = Field::zeros(grid);
        // Dirichlet-fix everything outside the unit disk.
        for (std::size_t j = 0; j < grid.ny; ++j)
            for (std::size_t i = 0; i < grid.nx; ++i) {
                double x = grid.x(i), y = grid.y(j);
                if (x * x + y * y >= 1.0) u0.dirichlet[grid.idx(i, j)] = 1;
            }
        break;
    }
    case ScenarioKind::levelset_mcf: {
        sc.dissipation = DissipationMap::sign_subdifferential();
        grid = Grid::centered(2, o.nx, 3.0);
        double r0 = o.r0;
        u0 = Field::from_function(grid, [r0](double x, double y) {
            return x * x + y * y - r0 * r0;
        });
        break;
    }
    default:
        throw ConfigError("unhandled scenario");
    }
    if (!o.dissipation.empty()) sc.dissipation = dissipation_by_spec(o.dissipation);

    auto snaps = run_pde(sc, u0, o.T, o.snapshots);
    std::filesystem::create_directories(o.out);
    std::vector<double> times, radii;
    for (std::size_t s = 0; s < snaps.size(); ++s) {
        char name[64];
        std::snprintf(name, sizeof(name), "field_%03zu.csv", s);
        write_field_csv((std::filesystem::path(o.out) / name).string(), snaps[s].field);
        times.push_back(snaps[s].t);
        if (kind == ScenarioKind::levelset_mcf)
            radii.push_back(zero_set_radius(snaps[s].field));
    }
    if (kind == ScenarioKind::levelset_mcf)
        write_xy_csv((std::filesystem::path(o.out) / "radius.csv").string(), "t", "r", times,
                     radii);
    std::cout << "snapshots=" << snaps.size() << " out=" << o.out << "\n";
    return 0;
}

struct HysteresisOpts {
    CommonOpts common;
    std::size_t steps = 16000;
    double eps = 1e-3;
    std::string out = "figure1";
    std::string report;
    bool svg = true;
    bool figure1 = false; // named convenience flag; defaults already match it
};

int run_hysteresis_cmd(const HysteresisOpts& o) {
    Loading loading = loading_by_spec(o.common.loading);
    print_warnings(loading.warnings());
    EnergyLandscape land = make_energy(o.common, loading);

    VVParams vv;
    vv.eps = o.eps;
    MMParams mm;
    mm.steps = o.steps;
    HysteresisReport rep = run_hysteresis(land, loading, vv, mm);
    print_warnings(rep.warnings);
    write_hysteresis_outputs(o.out, rep, land, o.svg);

    std::cout << "predicted jumps:\n";
    for (const auto& p : rep.predicted)
        std::cout << "  " << scheme_name(p.scheme) << " f=" << p.f_level << " t=" << p.t_pred
                  << (p.direction > 0 ? " up" : " down") << "\n";
    std::cout << "realized gap crossings:\n";
    for (const auto& r : rep.realized)
        std::cout << "  " << scheme_name(r.scheme) << " f=" << r.f_level << " t=" << r.t_mid
                  << (r.direction > 0 ? " up" : " down") << " gap=" << r.gap_kind << "\n";

    // Each prediction must be realized by the matching scheme within a
    // scheme-appropriate tolerance (finite step for mm, finite eps for vv).
    std::vector<CheckReport> reports;
    CheckReport match;
    match.check = "jump_levels_match";
    match.tol = 1.0;
    for (const auto& p : rep.predicted) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& r : rep.realized) {
            Scheme want = p.scheme == Scheme::vv ? Scheme::vv : Scheme::mm;
            if (r.scheme != want || r.direction != p.direction) continue;
            best = std::min(best, std::abs(r.f_level - p.f_level));
        }
        double scaled = best / (p.scheme == Scheme::vv ? 0.05 : 0.01);
        if (scaled > match.worst) {
            match.worst = scaled;
            match.where = p.t_pred;
        }
    }
    match.pass = match.worst <= match.tol;
    match.note = "worst |realized - predicted| / tolerance over all predictions";
    reports.push_back(match);
    print_reports(reports);
    if (!o.report.empty()) write_report_json(o.report, reports);
    return all_pass(reports) ? 0 : 1;
}

struct VerifyOpts {
    std::string run;
    std::string suite = "mm_lemmas";
    std::string energy = "cubic_paper";
    double tol = 1e-7;
    double margin = 0.05;
    double max_fraction = 0.01;
    std::string report = "report.json";
};

int run_verify_cmd(const VerifyOpts& o) {
    Trajectory traj = read_trajectory_csv(o.run);
    if (traj.size() < 2) throw ConfigError("trajectory too short: " + o.run);
    Loading loading = loading_from_samples(traj.times, traj.f_values);
    EnergyLandscape land = energy_by_spec(o.energy, 1.0, -1.0);
    land.expand_bracket_to_cover(loading.f_min(), loading.f_max());

    std::vector<CheckReport> reports;
    if (o.suite == "mm_lemmas")
        reports = suite_mm_lemmas(traj, land, loading, o.tol);
    else if (o.suite == "vv_lemmas")
        reports = suite_vv_lemmas(traj, land, loading, o.margin, o.max_fraction);
    else
        throw ConfigError("unknown suite: " + o.suite);

    print_reports(reports);
    write_report_json(o.report, reports);
    return all_pass(reports) ? 0 : 1;
}

struct SweepOpts {
    CommonOpts common;
    std::string axis = "eps";
    std::vector<double> values;
    std::size_t steps = 4000;
    double eps = 1e-3;
    std::string out = "sweep.csv";
    std::string rundir = "sweep_runs";
};

int run_sweep_cmd(const SweepOpts& o) {
    if (o.values.empty()) throw ConfigError("sweep needs a non-empty value list");
    if (o.axis != "eps" && o.axis != "h" && o.axis != "N")
        throw ConfigError("sweep axis must be eps, h, or N");
    Loading loading = loading_by_spec(o.common.loading);
    EnergyLandscape land = make_energy(o.common, loading);
    GapSet gaps = land.gap_components(100000);
    std::filesystem::create_directories(o.rundir);

    struct Row {
        double value;
        double final_u = 0.0;
        std::string jump_levels;
        bool checks_pass = false;
    };
    std::vector<Row> rows(o.values.size());

    int cap = thread_cap();
#pragma omp parallel for schedule(dynamic, 1) num_threads(cap)
    for (long long i = 0; i < static_cast<long long>(o.values.size()); ++i) {
        auto k = static_cast<std::size_t>(i);
        double value = o.values[k];
        Row row;
        row.value = value;
        Trajectory traj;
        std::vector<CheckReport> reports;
        if (o.axis == "N") {
            MMParams mm;
            mm.steps = static_cast<std::size_t>(value);
            traj = run_minimizing_movements(land, loading, mm, 0.0);
            reports = suite_mm_lemmas(traj, land, loading, 1e-7);
        } else {
            VVParams vv;
            vv.eps = o.axis == "eps" ? value : o.eps;
            vv.h = o.axis == "h" ? value : 0.0;
            vv.parallel = false;
            traj = run_viscous(land, loading, vv, 0.0);
            reports = suite_vv_lemmas(traj, land, loading, 0.05, 0.01);
        }
        row.final_u = traj.values.back();
        for (const auto& j : extract_gap_crossings(traj, gaps)) {
            if (!row.jump_levels.empty()) row.jump_levels += ';';
            row.jump_levels += format_double(j.f_level);
        }
        row.checks_pass = all_pass(reports);
        char name[64];
        std::snprintf(name, sizeof(name), "run_%03zu.csv", k);
        write_trajectory_csv((std::filesystem::path(o.rundir) / name).string(), traj);
        rows[k] = row;
    }

    std::ofstream out(o.out);
    if (!out) throw ConfigError("cannot open sweep output: " + o.out);
    out << "axis,value,final_u,jump_levels,checks_pass\n";
    for (const auto& r : rows)
        out << o.axis << ',' << format_double(r.value) << ',' << format_double(r.final_u) << ','
            << r.jump_levels << ',' << (r.checks_pass ? 1 : 0) << '\n';
    std::cout << "sweep rows=" << rows.size() << " out=" << o.out << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rate-independent doubly-nonlinear evolution solver"};
    app.require_subcommand(1);
    app.set_config("--config");
    bool dump_config = false;
    app.add_flag("--dump-config", dump_config, "print the effective config and exit");

    OdeOpts ode;
    CLI::App* ode_cmd = app.add_subcommand("ode", "run one scalar evolution");
    ode_cmd->add_option("--energy", ode.common.energy);
    ode_cmd->add_option("--loading", ode.common.loading);
    ode_cmd->add_option("--bracket-lo", ode.common.bracket_lo);
    ode_cmd->add_option("--bracket-hi", ode.common.bracket_hi);
    ode_cmd->add_option("--seed", ode.common.seed);
    ode_cmd->add_option("--scheme", ode.scheme)->check(CLI::IsMember({"mm", "vv", "vv_limit"}));
    ode_cmd->add_option("--steps", ode.steps);
    ode_cmd->add_option("--eps", ode.eps);
    ode_cmd->add_option("--step-size", ode.h);
    ode_cmd->add_option("--eps-seq", ode.eps_seq)->delimiter(',');
    ode_cmd->add_option("--u0", ode.u0);
    ode_cmd->add_option("--scan-points", ode.scan_points);
    ode_cmd->add_option("--resolution", ode.resolution);
    ode_cmd->add_option("--out", ode.out);
    ode_cmd->add_option("--report", ode.report);
    ode_cmd->add_option("--envelope-out", ode.envelope_out);
    ode_cmd->add_flag("--check,!--no-check", ode.check);

    PdeOpts pde;
    CLI::App* pde_cmd = app.add_subcommand("pde", "run one PDE scenario");
    pde_cmd->add_option("--scenario", pde.scenario);
    pde_cmd->add_option("--nx", pde.nx);
    pde_cmd->add_option("--dt", pde.dt);
    pde_cmd->add_option("--T", pde.T);
    pde_cmd->add_option("--snapshots", pde.snapshots);
    pde_cmd->add_option("--reg-eps", pde.reg_eps);
    pde_cmd->add_option("--sigma", pde.sigma);
    pde_cmd->add_option("--n", pde.n_dim);
    pde_cmd->add_option("--r0", pde.r0);
    pde_cmd->add_option("--forcing", pde.forcing);
    pde_cmd->add_option("--dissipation", pde.dissipation);
    pde_cmd->add_option("--out", pde.out);

    HysteresisOpts hys;
    CLI::App* hys_cmd = app.add_subcommand("hysteresis", "reproduce the hysteresis loop");
    hys_cmd->add_option("--energy", hys.common.energy);
    hys_cmd->add_option("--loading", hys.common.loading);
    hys_cmd->add_option("--steps", hys.steps);
    hys_cmd->add_option("--eps", hys.eps);
    hys_cmd->add_option("--out", hys.out);
    hys_cmd->add_option("--report", hys.report);
    hys_cmd->add_flag("--svg,!--no-svg", hys.svg);
    hys_cmd->add_flag("--figure1", hys.figure1, "use the standard figure settings");

    VerifyOpts ver;
    CLI::App* ver_cmd = app.add_subcommand("verify", "check lemma suites on a saved run");
    ver_cmd->add_option("--run", ver.run)->required();
    ver_cmd->add_option("--suite", ver.suite);
    ver_cmd->add_option("--energy", ver.energy);
    ver_cmd->add_option("--tol", ver.tol);
    ver_cmd->add_option("--margin", ver.margin);
    ver_cmd->add_option("--max-fraction", ver.max_fraction);
    ver_cmd->add_option("--report", ver.report);

    SweepOpts sweep;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run one solver per axis value");
    sweep_cmd->add_option("--energy", sweep.common.energy);
    sweep_cmd->add_option("--loading", sweep.common.loading);
    sweep_cmd->add_option("--axis", sweep.axis);
    sweep_cmd->add_option("--values", sweep.values)->delimiter(',');
    sweep_cmd->add_option("--steps", sweep.steps);
    sweep_cmd->add_option("--eps", sweep.eps);
    sweep_cmd->add_option("--out", sweep.out);
    sweep_cmd->add_option("--rundir", sweep.rundir);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (dump_config) {
        std::cout << app.config_to_str(true, true);
        return 0;
    }

    try {
        if (ode_cmd->parsed()) return run_ode(ode);
        if (pde_cmd->parsed()) return run_pde_cmd(pde);
        if (hys_cmd->parsed()) return run_hysteresis_cmd(hys);
        if (ver_cmd->parsed()) return run_verify_cmd(ver);
        if (sweep_cmd->parsed()) return run_sweep_cmd(sweep);
    } catch (const GuardViolated& e) {
        std::cerr << "guard violation: " << e.what() << "\n";
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
