#include "rievolve/pde.hpp"

#include <algorithm>
#include <cmath>

#include "rievolve/errors.hpp"

namespace rievolve {

Grid Grid::centered(int dim, std::size_t n, double half) {
    if (n < 3) throw ConfigError("grid needs at least 3 nodes per axis");
    Grid g;
    g.dim = dim;
    g.nx = n;
    g.ny = dim == 2 ? n : 1;
    g.dx = 2.0 * half / static_cast<double>(n - 1);
    g.ox = -half;
    g.oy = dim == 2 ? -half : 0.0;
    return g;
}

Field Field::zeros(const Grid& g) {
    Field f;
    f.grid = g;
    f.values.assign(g.size(), 0.0);
    f.dirichlet.assign(g.size(), 0);
    f.trace.assign(g.size(), 0.0);
    f.pin_boundary_to_current();
    return f;
}

Field Field::from_function(const Grid& g, const std::function<double(double, double)>& fn) {
    Field f = zeros(g);
    for (std::size_t j = 0; j < g.ny; ++j)
        for (std::size_t i = 0; i < g.nx; ++i)
            f.values[g.idx(i, j)] = fn(g.x(i), g.y(j));
    f.pin_boundary_to_current();
    return f;
}

void Field::pin_boundary_to_current() {
    for (std::size_t j = 0; j < grid.ny; ++j)
        for (std::size_t i = 0; i < grid.nx; ++i) {
            bool edge = i == 0 || i + 1 == grid.nx ||
                        (grid.dim == 2 && (j == 0 || j + 1 == grid.ny));
            std::size_t k = grid.idx(i, j);
            dirichlet[k] = edge ? 1 : 0;
            trace[k] = values[k];
        }
}

void Field::apply_boundary() {
    for (std::size_t k = 0; k < values.size(); ++k)
        if (dirichlet[k]) values[k] = trace[k];
}

double Field::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

std::string scenario_name(ScenarioKind k) {
    switch (k) {
    case ScenarioKind::sticktion_heat: return "sticktion_heat";
    case ScenarioKind::nonconvex_cubed: return "nonconvex_cubed";
    case ScenarioKind::levelset_mcf: return "levelset_mcf";
    case ScenarioKind::mcf_radial: return "mcf_radial";
    }
    return "?";
}

ScenarioKind scenario_by_name(const std::string& name) {
    if (name == "sticktion_heat") return ScenarioKind::sticktion_heat;
    if (name == "nonconvex_cubed") return ScenarioKind::nonconvex_cubed;
    if (name == "levelset_mcf") return ScenarioKind::levelset_mcf;
    if (name == "mcf_radial") return ScenarioKind::mcf_radial;
    throw ConfigError("unknown pde scenario: " + name);
}

double PDEScenario::stable_dt(const Grid& g) const {
    double cfl = g.dx * g.dx / (2.0 * static_cast<double>(g.dim));
    switch (kind) {
    case ScenarioKind::sticktion_heat:
        return 0.9 * cfl;
    case ScenarioKind::nonconvex_cubed:
        // The spatial operator enters through the rate, so the diffusion
        // number carries the extra 1/reg_eps.
        return 0.9 * reg_eps * cfl;
    case ScenarioKind::levelset_mcf:
        // Same 1/reg_eps factor: the curvature term diffuses sliding nodes.
        return 0.9 * reg_eps * cfl;
    case ScenarioKind::mcf_radial:
        return 0.9 * cfl;
    }
    return 0.9 * cfl;
}

double PDEScenario::effective_sigma(const Grid& g) const {
    return sigma >= 0.0 ? sigma : 1e-6 * g.dx;
}

Field laplacian(const Field& u) {
    const Grid& g = u.grid;
    Field out = Field::zeros(g);
    double inv = 1.0 / (g.dx * g.dx);
    if (g.dim == 1) {
        for (std::size_t i = 1; i + 1 < g.nx; ++i)
            out.values[i] = (u.values[i - 1] - 2.0 * u.values[i] + u.values[i + 1]) * inv;
        return out;
    }
    for (std::size_t j = 1; j + 1 < g.ny; ++j)
        for (std::size_t i = 1; i + 1 < g.nx; ++i) {
            std::size_t k = g.idx(i, j);
            out.values[k] = (u.values[k - 1] + u.values[k + 1] + u.values[k - g.nx] +
                             u.values[k + g.nx] - 4.0 * u.values[k]) *
                            inv;
        }
    return out;
}

CurvatureTerms mean_curvature_terms(const Field& u, double sigma) {
    const Grid& g = u.grid;
    if (g.dim != 2) throw ConfigError("mean_curvature_terms needs a 2D field");
    CurvatureTerms ct{Field::zeros(g), Field::zeros(g)};
    double inv2 = 1.0 / (2.0 * g.dx);
    double invsq = 1.0 / (g.dx * g.dx);
    double inv4 = 1.0 / (4.0 * g.dx * g.dx);
    for (std::size_t j = 1; j + 1 < g.ny; ++j)
        for (std::size_t i = 1; i + 1 < g.nx; ++i) {
            std::size_t k = g.idx(i, j);
            double ux = (u.values[k + 1] - u.values[k - 1]) * inv2;
            double uy = (u.values[k + g.nx] - u.values[k - g.nx]) * inv2;
            double uxx = (u.values[k + 1] - 2.0 * u.values[k] + u.values[k - 1]) * invsq;
            double uyy = (u.values[k + g.nx] - 2.0 * u.values[k] + u.values[k - g.nx]) * invsq;
            double uxy = (u.values[k + g.nx + 1] - u.values[k + g.nx - 1] -
                          u.values[k - g.nx + 1] + u.values[k - g.nx - 1]) *
                         inv4;
            double grad2 = ux * ux + uy * uy;
            ct.grad_norm.values[k] = std::sqrt(grad2 + sigma * sigma);
            ct.kappa_term.values[k] =
                (uxx * uy * uy - 2.0 * uxy * ux * uy + uyy * ux * ux + sigma * sigma * (uxx + uyy)) /
                (grad2 + sigma * sigma);
        }
    return ct;
}

namespace {

// Nodal rate for one scenario at interior node k; spatial terms precomputed.
struct StepContext {
    const PDEScenario* sc;
    const Field* u;
    const Field* lap;
    const CurvatureTerms* ct;
    double t;
    double sigma;
};

double nodal_rate(const StepContext& cx, std::size_t i, std::size_t j) {
    const Grid& g = cx.u->grid;
    std::size_t k = g.idx(i, j);
    double x = g.x(i), y = g.y(j);
    double f = cx.sc->forcing ? cx.sc->forcing(x, y, cx.t) : 0.0;
    double uv = cx.u->values[k];
    switch (cx.sc->kind) {
    case ScenarioKind::sticktion_heat: {
        double gres = f + cx.lap->values[k];
        return viscous_resolvent(cx.sc->dissipation, cx.sc->reg_eps, gres);
    }
    case ScenarioKind::nonconvex_cubed: {
        double gres = f - std::max(-cx.lap->values[k], 0.0) - uv * uv * uv;
        return viscous_resolvent(cx.sc->dissipation, cx.sc->reg_eps, gres);
    }
    case ScenarioKind::levelset_mcf: {
        double gres = f - uv + cx.ct->kappa_term.values[k];
        return soft_threshold(gres, cx.ct->grad_norm.values[k]) / cx.sc->reg_eps;
    }
    case ScenarioKind::mcf_radial:
        break;
    }
    throw ConfigError("pde_step does not handle the radial fast path");
}

Field pde_step_impl(const PDEScenario& sc, const Field& u, double t, bool parallel) {
    if (sc.kind == ScenarioKind::mcf_radial)
        throw ConfigError("the radial fast path runs through radial_mcf_run");
    const Grid& g = u.grid;
    double dt = sc.dt > 0.0 ? sc.dt : sc.stable_dt(g);
    double cfl = g.dx * g.dx / (2.0 * static_cast<double>(g.dim));
    if (dt > cfl * (1.0 + 1e-12)) throw GuardViolated("pde step exceeds the CFL bound");

    Field lap;
    CurvatureTerms ct;
    StepContext cx{&sc, &u, nullptr, nullptr, t, sc.effective_sigma(g)};
    if (sc.kind == ScenarioKind::levelset_mcf) {
        ct = mean_curvature_terms(u, cx.sigma);
        cx.ct = &ct;
    } else {
        lap = laplacian(u);
        cx.lap = &lap;
    }

    Field next = u;
    if (g.dim == 1) {
        for (std::size_t i = 1; i + 1 < g.nx; ++i)
            next.values[i] = u.values[i] + dt * nodal_rate(cx, i, 0);
    } else {
        const long long ny = static_cast<long long>(g.ny);
#pragma omp parallel for schedule(static) if (parallel)
        for (long long j = 1; j < ny - 1; ++j)
            for (std::size_t i = 1; i + 1 < g.nx; ++i) {
                std::size_t k = g.idx(i, static_cast<std::size_t>(j));
                next.values[k] = u.values[k] + dt * nodal_rate(cx, i, static_cast<std::size_t>(j));
            }
    }
    next.apply_boundary();
    return next;
}

} // namespace

Field pde_step(const PDEScenario& sc, const Field& u, double t) {
    return pde_step_impl(sc, u, t, true);
}

Field pde_step_serial(const PDEScenario& sc, const Field& u, double t) {
    return pde_step_impl(sc, u, t, false);
}

std::vector<PDESnapshot> run_pde(const PDEScenario& sc, const Field& u0, double T,
                                 std::size_t snapshots) {
    if (!(T > 0.0)) throw ConfigError("run_pde needs T > 0");
    snapshots = std::max<std::size_t>(snapshots, 1);
    double dt = sc.dt > 0.0 ? sc.dt : sc.stable_dt(u0.grid);
    auto steps = static_cast<std::size_t>(std::ceil(T / dt - 1e-12));
    dt = T / static_cast<double>(steps);
    PDEScenario stepped = sc;
    stepped.dt = dt;

    std::vector<PDESnapshot> out;
    out.push_back({0.0, u0});
    Field u = u0;
    std::size_t emitted = 1;
    for (std::size_t k = 1; k <= steps; ++k) {
        double t_prev = dt * static_cast<double>(k - 1);
        u = pde_step(stepped, u, t_prev);
        double t = dt * static_cast<double>(k);
        // Emit when t passes the next snapshot time.
        while (emitted <= snapshots &&
               t + 1e-12 >= T * static_cast<double>(emitted) / static_cast<double>(snapshots)) {
            out.push_back({t, u});
            ++emitted;
        }
    }
    return out;
}

RadialResult radial_mcf_run(int n, double r0, double reg_eps, double dt, double T,
                            double r_floor) {
    if (n < 2 || !(r0 > 0.0)) throw ConfigError("radial run needs n >= 2 and r0 > 0");
    if (!(dt > 0.0) || !(T > 0.0)) throw ConfigError("radial run needs dt, T > 0");
    RadialResult res;
    res.r_floor = r_floor;
    auto steps = static_cast<std::size_t>(std::ceil(T / dt - 1e-12));
    dt = T / static_cast<double>(steps);

    Trajectory& traj = res.radius;
    traj.scheme = Scheme::vv;
    traj.eps = reg_eps;
    traj.step = dt;
    traj.times.reserve(steps + 1);
    traj.values.reserve(steps + 1);
    traj.f_values.assign(steps + 1, 0.0);
    traj.times.push_back(0.0);
    traj.values.push_back(r0);

    double r = r0;
    double curvature_excess = (static_cast<double>(n - 1) / r) - 1.0;
    bool stationary = curvature_excess <= 0.0;
    for (std::size_t k = 1; k <= steps; ++k) {
        double t_target = dt * static_cast<double>(k);
        if (!stationary && !res.collapsed) {
            double t = dt * static_cast<double>(k - 1);
            while (t < t_target - 1e-15) {
                double rate = ((static_cast<double>(n - 1) / r) - 1.0) / reg_eps;
                if (rate <= 0.0) break;
                // Substep clamp so a single explicit step cannot overshoot.
                double sub = std::min(t_target - t, 0.2 * r / rate);
                r -= sub * rate;
                t += sub;
                if (r <= r_floor) {
                    r = r_floor;
                    res.collapsed = true;
                    res.hit_time = t;
                    break;
                }
            }
        }
        traj.times.push_back(t_target);
        traj.values.push_back(r);
    }
    return res;
}

double zero_set_radius(const Field& u, double cx, double cy) {
    const Grid& g = u.grid;
    if (g.dim != 2) throw ConfigError("zero_set_radius needs a 2D field");
    auto ci = static_cast<std::size_t>(std::llround((cx - g.ox) / g.dx));
    auto cj = static_cast<std::size_t>(std::llround((cy - g.oy) / g.dx));
    ci = std::min(ci, g.nx - 1);
    cj = std::min(cj, g.ny - 1);

    double sum = 0.0;
    int hits = 0;
    auto walk = [&](long long di, long long dj) {
        // From the domain edge inward; first sign change is the outer radius.
        long long i = static_cast<long long>(ci), j = static_cast<long long>(cj);
        std::vector<std::pair<double, double>> ray; // (distance, value)
        long long ii = i, jj = j;
        while (ii >= 0 && jj >= 0 && ii < static_cast<long long>(g.nx) &&
               jj < static_cast<long long>(g.ny)) {
            double dxs = g.x(static_cast<std::size_t>(ii)) - cx;
            double dys = g.y(static_cast<std::size_t>(jj)) - cy;
            ray.emplace_back(std::sqrt(dxs * dxs + dys * dys),
                             u.values[g.idx(static_cast<std::size_t>(ii),
                                            static_cast<std::size_t>(jj))]);
            ii += di;
            jj += dj;
        }
        for (std::size_t k = ray.size(); k-- > 1;) {
            double v_out = ray[k].second, v_in = ray[k - 1].second;
            if ((v_out > 0.0 && v_in <= 0.0) || (v_out < 0.0 && v_in >= 0.0)) {
                double w = v_out / (v_out - v_in);
                sum += ray[k].first + w * (ray[k - 1].first - ray[k].first);
                ++hits;
                return;
            }
        }
    };
    walk(+1, 0);
    walk(-1, 0);
    walk(0, +1);
    walk(0, -1);
    return hits > 0 ? sum / hits : 0.0;
}

} // namespace rievolve
