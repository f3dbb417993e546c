#include "rievolve/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rievolve/errors.hpp"

namespace rievolve {

namespace {

// Sign-change bisection of fn on [a, b]; assumes fn(a), fn(b) have opposite
// signs. Converges to ~1e-15 relative width.
template <class F>
double bisect_root(F&& fn, double a, double b, double fa) {
    for (int it = 0; it < 120; ++it) {
        double m = 0.5 * (a + b);
        double fm = fn(m);
        if (fm == 0.0) return m;
        if ((fa > 0.0) == (fm > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
        if (std::abs(b - a) <= 1e-15 * (1.0 + std::abs(a) + std::abs(b))) break;
    }
    return 0.5 * (a + b);
}

template <class F>
double golden_min(F&& fn, double a, double b, int iters = 60) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = fn(x1);
    double f2 = fn(x2);
    for (int it = 0; it < iters; ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = fn(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = fn(x2);
        }
    }
    return f1 <= f2 ? x1 : x2;
}

} // namespace

double VVParams::guarded_h(const EnergyLandscape& land, double eps) {
    double L = std::max(land.lipschitz_on_bracket(), 1e-12);
    return eps / (2.0 * L);
}

double viscous_step(const EnergyLandscape& land, double f_val, double u_prev, double eps,
                    double h, double root_tol) {
    if (!(eps > 0.0) || !(h > 0.0)) throw ConfigError("viscous_step needs eps, h > 0");
    if (!(root_tol > 0.0)) throw ConfigError("viscous_step needs root_tol > 0");
    // The bisection below runs to ~1e-15 relative width, inside any sane
    // root_tol; the parameter is the bound callers may rely on.
    double e_prev = land.e(u_prev);

    // Uniqueness guard: cheap global bound first, local window bound only
    // when the global one fails.
    if (h > eps / (2.0 * std::max(land.lipschitz_on_bracket(), 1e-12))) {
        double s_guard = h * (std::abs(f_val) + 1.0 + std::abs(e_prev)) / eps + 1.0;
        double L = land.lipschitz_on(u_prev - s_guard, u_prev + s_guard);
        if (h > eps / (2.0 * std::max(L, 1e-12)))
            throw GuardViolated("viscous step size violates h <= eps/(2L)");
    }

    double beta = eps / h;
    double r0 = f_val - e_prev;
    if (std::abs(r0) <= 1.0) return u_prev; // 0 ∈ dR(0) + e(u) - f

    if (r0 > 1.0) {
        auto g = [&](double d) { return beta * d + land.e(u_prev + d) + 1.0 - f_val; };
        double hi = (r0 - 1.0) / beta;
        double ghi = g(hi);
        int guard = 0;
        while (ghi < 0.0 && guard++ < 200) {
            hi *= 2.0;
            ghi = g(hi);
        }
        if (ghi < 0.0) throw GuardViolated("viscous step bracket expansion failed");
        double d = bisect_root(g, 0.0, hi, 1.0 - r0);
        return u_prev + d;
    }
    auto g = [&](double d) { return beta * d + land.e(u_prev + d) - 1.0 - f_val; };
    double lo = (r0 + 1.0) / beta;
    double glo = g(lo);
    int guard = 0;
    while (glo > 0.0 && guard++ < 200) {
        lo *= 2.0;
        glo = g(lo);
    }
    if (glo > 0.0) throw GuardViolated("viscous step bracket expansion failed");
    double d = bisect_root(g, lo, 0.0, glo);
    return u_prev + d;
}

namespace {

// Same step as viscous_step, with the per-step guard hoisted out (the run
// validates h against the bracket Lipschitz constant once).
double viscous_step_unguarded(const EnergyLandscape& land, double f_val, double u_prev,
                              double beta, double hint) {
    double e_prev = land.e(u_prev);
    double r0 = f_val - e_prev;
    if (std::abs(r0) <= 1.0) return u_prev;
    if (r0 > 1.0) {
        auto g = [&](double d) { return beta * d + land.e(u_prev + d) + 1.0 - f_val; };
        double hi = std::max((r0 - 1.0) / beta, hint);
        double ghi = g(hi);
        int guard = 0;
        while (ghi < 0.0 && guard++ < 200) {
            hi *= 2.0;
            ghi = g(hi);
        }
        return u_prev + bisect_root(g, 0.0, hi, 1.0 - r0);
    }
    auto g = [&](double d) { return beta * d + land.e(u_prev + d) - 1.0 - f_val; };
    double lo = std::min((r0 + 1.0) / beta, -hint);
    double glo = g(lo);
    int guard = 0;
    while (glo > 0.0 && guard++ < 200) {
        lo *= 2.0;
        glo = g(lo);
    }
    return u_prev + bisect_root(g, lo, 0.0, glo);
}

} // namespace

Trajectory run_viscous(const EnergyLandscape& land, const Loading& loading,
                       const VVParams& params, double u0) {
    double t0 = loading.t_begin();
    double T = loading.t_end() - t0;
    if (!(T > 0.0)) throw ConfigError("loading has empty time span");
    double h_req = params.h > 0.0 ? params.h : VVParams::guarded_h(land, params.eps);
    auto n = static_cast<std::size_t>(std::ceil(T / h_req - 1e-12));
    n = std::max<std::size_t>(n, 1);
    double h = T / static_cast<double>(n);
    if (h > VVParams::guarded_h(land, params.eps) * (1.0 + 1e-12))
        throw GuardViolated("requested h violates the uniqueness guard on the bracket");

    Trajectory traj;
    traj.scheme = Scheme::vv;
    traj.eps = params.eps;
    traj.step = h;
    traj.times.resize(n + 1);
    traj.values.resize(n + 1);
    traj.f_values.resize(n + 1);
    traj.times[0] = t0;
    traj.values[0] = u0;
    traj.f_values[0] = loading.value(t0);

    double beta = params.eps / h;
    double u = u0;
    double hint = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        double t = t0 + T * static_cast<double>(k) / static_cast<double>(n);
        double f = loading.value(t);
        double u_next = viscous_step_unguarded(land, f, u, beta, hint);
        hint = std::abs(u_next - u) * 2.0;
        u = u_next;
        traj.times[k] = t;
        traj.values[k] = u;
        traj.f_values[k] = f;
    }
    return traj;
}

VVLimitResult vanishing_viscosity_limit(const EnergyLandscape& land, const Loading& loading,
                                        const VVParams& params, double u0) {
    const std::vector<double>& eps_seq = params.eps_sequence;
    if (eps_seq.empty()) throw ConfigError("eps sequence is empty");
    for (std::size_t i = 1; i < eps_seq.size(); ++i)
        if (!(eps_seq[i] < eps_seq[i - 1]))
            throw ConfigError("eps sequence must be strictly decreasing");

    double t0 = loading.t_begin();
    double T = loading.t_end() - t0;
    // Nested step grids: every finer grid contains the coarsest one, so the
    // sup and the eps-monotonicity check evaluate at shared step points.
    auto n0 = static_cast<std::size_t>(
        std::ceil(T / VVParams::guarded_h(land, eps_seq.front()) - 1e-12));
    n0 = std::max<std::size_t>(n0, 1);
    std::vector<std::size_t> ns(eps_seq.size());
    for (std::size_t i = 0; i < eps_seq.size(); ++i) {
        auto need = static_cast<std::size_t>(std::ceil(T / VVParams::guarded_h(land, eps_seq[i]) - 1e-12));
        ns[i] = n0 * std::max<std::size_t>(1, (need + n0 - 1) / n0);
    }

    VVLimitResult res;
    res.eps_values = eps_seq;
    res.per_eps.resize(eps_seq.size());
#pragma omp parallel for schedule(dynamic, 1) if (params.parallel)
    for (long long i = 0; i < static_cast<long long>(eps_seq.size()); ++i) {
        VVParams p = params;
        p.eps = eps_seq[static_cast<std::size_t>(i)];
        p.h = T / static_cast<double>(ns[static_cast<std::size_t>(i)]);
        res.per_eps[static_cast<std::size_t>(i)] = run_viscous(land, loading, p, u0);
    }

    Trajectory& lim = res.limit;
    lim.scheme = Scheme::vv_limit;
    lim.eps = eps_seq.back();
    lim.step = T / static_cast<double>(n0);
    lim.times.resize(n0 + 1);
    lim.values.resize(n0 + 1);
    lim.f_values.resize(n0 + 1);
    for (std::size_t k = 0; k <= n0; ++k) {
        lim.times[k] = t0 + T * static_cast<double>(k) / static_cast<double>(n0);
        lim.f_values[k] = loading.value(lim.times[k]);
        double v = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < res.per_eps.size(); ++i) {
            std::size_t stride = ns[i] / n0;
            v = std::max(v, res.per_eps[i].values[k * stride]);
        }
        lim.values[k] = v;
    }
    return res;
}

MMScanWorkspace build_mm_workspace(const EnergyLandscape& land, std::size_t scan_points) {
    if (scan_points < 3) throw ConfigError("scan_points must be >= 3");
    MMScanWorkspace ws;
    ws.q.resize(scan_points);
    ws.energy.resize(scan_points);
    ws.phi.resize(scan_points);
    double a = land.x_lo(), b = land.x_hi();
    for (std::size_t i = 0; i < scan_points; ++i)
        ws.q[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(scan_points - 1);
    for (std::size_t i = 0; i < scan_points; ++i) ws.energy[i] = land.antiderivative(ws.q[i]);
    return ws;
}

namespace kernels {

void mm_objective_fill_serial(std::span<const double> q, std::span<const double> energy,
                              double f, double q_prev, std::span<double> phi) {
    for (std::size_t i = 0; i < q.size(); ++i)
        phi[i] = energy[i] - f * q[i] + std::abs(q[i] - q_prev);
}

void mm_objective_fill_omp(std::span<const double> q, std::span<const double> energy,
                           double f, double q_prev, std::span<double> phi) {
    const long long n = static_cast<long long>(q.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) {
        auto k = static_cast<std::size_t>(i);
        phi[k] = energy[k] - f * q[k] + std::abs(q[k] - q_prev);
    }
}

} // namespace kernels

namespace {

struct MMCandidate {
    double q;
    double phi;
};

} // namespace

double mm_step(const EnergyLandscape& land, double f_val, double q_prev,
               const MMParams& params, int direction) {
    MMScanWorkspace ws = build_mm_workspace(land, params.scan_points);
    return mm_step(land, f_val, q_prev, params, direction, ws);
}

double mm_step(const EnergyLandscape& land, double f_val, double q_prev,
               const MMParams& params, int direction, MMScanWorkspace& ws) {
    const std::size_t n = ws.q.size();
    const double cell = ws.q[1] - ws.q[0];
    auto phi_exact = [&](double x) {
        return land.antiderivative(x) - f_val * x + std::abs(x - q_prev);
    };

    if (params.parallel)
        kernels::mm_objective_fill_omp(ws.q, ws.energy, f_val, q_prev, ws.phi);
    else
        kernels::mm_objective_fill_serial(ws.q, ws.energy, f_val, q_prev, ws.phi);

    double phi_prev = phi_exact(q_prev);
    if (ws.phi.front() <= phi_prev || ws.phi.back() <= phi_prev)
        throw BracketTooSmall("incremental objective not coercive on the bracket");

    // Kink admissibility: 0 ∈ dPhi(q_prev) iff |f - e(q_prev)| <= 1.
    double kink_slack = 1e-12 * (1.0 + std::abs(f_val));
    bool kink_ok = std::abs(f_val - land.e(q_prev)) <= 1.0 + kink_slack;

    std::vector<MMCandidate> cands;
    if (kink_ok) cands.push_back({q_prev, phi_prev});

    auto add_candidate = [&](double x) {
        if (std::abs(x - q_prev) <= params.snap_tol_rel * (1.0 + std::abs(q_prev))) {
            if (kink_ok) return; // already represented exactly by q_prev
            x = q_prev;
        }
        cands.push_back({x, phi_exact(x)});
    };

    for (std::size_t i = 0; i < n; ++i) {
        bool left_ok = i == 0 || ws.phi[i] <= ws.phi[i - 1];
        bool right_ok = i + 1 == n || ws.phi[i] <= ws.phi[i + 1];
        if (!(left_ok && right_ok)) continue;
        if (i == 0 || i + 1 == n) continue; // coercivity already excludes the ends
        double a = ws.q[i - 1];
        double b = ws.q[i + 1];

        // Stationarity polish: a smooth local minimizer right of the kink
        // solves e(q) = f - 1, left of it e(q) = f + 1.
        bool polished = false;
        if (b > q_prev + params.snap_tol_rel) {
            double aa = std::max(a, q_prev);
            auto r = [&](double x) { return land.e(x) - (f_val - 1.0); };
            double ra = r(aa), rb = r(b);
            if ((ra <= 0.0 && rb >= 0.0) || (ra >= 0.0 && rb <= 0.0)) {
                double root = bisect_root(r, aa, b, ra);
                if (root > q_prev) {
                    add_candidate(root);
                    polished = true;
                }
            }
        }
        if (a < q_prev - params.snap_tol_rel) {
            double bb = std::min(b, q_prev);
            auto r = [&](double x) { return land.e(x) - (f_val + 1.0); };
            double ra = r(a), rb = r(bb);
            if ((ra <= 0.0 && rb >= 0.0) || (ra >= 0.0 && rb <= 0.0)) {
                double root = bisect_root(r, a, bb, ra);
                if (root < q_prev) {
                    add_candidate(root);
                    polished = true;
                }
            }
        }
        bool holds_kink = q_prev >= a - cell && q_prev <= b + cell;
        if (!polished && !(holds_kink && kink_ok)) add_candidate(golden_min(phi_exact, a, b));
    }

    if (cands.empty()) throw BracketTooSmall("no admissible minimizer located in the bracket");

    std::sort(cands.begin(), cands.end(),
              [](const MMCandidate& x, const MMCandidate& y) { return x.q < y.q; });
    double pos_tol =
        params.tie_tol_rel * (1.0 + std::abs(land.x_hi()) + std::abs(land.x_lo()));
    std::vector<MMCandidate> unique;
    for (const auto& c : cands) {
        if (!unique.empty() && std::abs(c.q - unique.back().q) <= pos_tol) {
            if (c.phi < unique.back().phi) unique.back() = c;
            continue;
        }
        unique.push_back(c);
    }

    if (direction == 0) {
        if (kink_ok) return q_prev;
        direction = +1;
    }
    return direction > 0 ? unique.back().q : unique.front().q;
}

Trajectory run_minimizing_movements(const EnergyLandscape& land, const Loading& loading,
                                    const MMParams& params, double q0) {
    std::vector<double> grid = params.partition;
    if (grid.empty()) {
        if (params.steps < 1) throw ConfigError("mm needs at least one step");
        double t0 = loading.t_begin();
        double T = loading.t_end() - t0;
        grid.resize(params.steps + 1);
        for (std::size_t k = 0; k <= params.steps; ++k)
            grid[k] = t0 + T * static_cast<double>(k) / static_cast<double>(params.steps);
    } else {
        for (std::size_t k = 1; k < grid.size(); ++k)
            if (!(grid[k] > grid[k - 1])) throw ConfigError("mm partition must increase");
    }

    MMScanWorkspace ws = build_mm_workspace(land, params.scan_points);
    Trajectory traj;
    traj.scheme = Scheme::mm;
    traj.eps = 0.0;
    traj.step = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
    traj.times = grid;
    traj.values.resize(grid.size());
    traj.f_values.resize(grid.size());
    traj.values[0] = q0;
    traj.f_values[0] = loading.value(grid[0]);

    double q = q0;
    double f_prev = traj.f_values[0];
    for (std::size_t k = 1; k < grid.size(); ++k) {
        double f = loading.value(grid[k]);
        int dir = f > f_prev ? +1 : f < f_prev ? -1 : 0;
        q = mm_step(land, f, q, params, dir, ws);
        traj.values[k] = q;
        traj.f_values[k] = f;
        f_prev = f;
    }
    return traj;
}

std::vector<JumpPrediction> predict_jumps(const EnergyLandscape& land, const Loading& loading) {
    CriticalPoints cp = land.critical_points();
    std::vector<JumpPrediction> out;
    if (cp.local_maxima.empty() && cp.local_minima.empty()) return out;
    std::string note =
        cp.local_maxima.size() > 1 || cp.local_minima.size() > 1
            ? "per-well pairing extrapolated beyond the single-dip case"
            : "";

    for (const auto& seg : loading.segments()) {
        if (seg.direction == 0) continue;
        auto emit = [&](double level, Scheme scheme) {
            for (double t : loading.crossing_times(seg, level))
                out.push_back({t, level, scheme, seg.direction, note});
        };
        if (seg.direction > 0) {
            for (const auto& p : cp.local_maxima) emit(p.second + 1.0, Scheme::vv);
            for (const auto& p : cp.local_minima) emit(p.second + 1.0, Scheme::mm);
        } else {
            for (const auto& p : cp.local_minima) emit(p.second - 1.0, Scheme::vv);
            for (const auto& p : cp.local_maxima) emit(p.second - 1.0, Scheme::mm);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const JumpPrediction& a, const JumpPrediction& b) { return a.t_pred < b.t_pred; });
    return out;
}

namespace {

void collect_crossings(const Trajectory& traj, const OpenInterval& gap, char kind,
                       std::vector<RealizedJump>& out) {
    auto side = [&](double v) { return v <= gap.lo ? -1 : v >= gap.hi ? +1 : 0; };
    double mid = 0.5 * (gap.lo + gap.hi);
    int last_side = 0;
    std::size_t last_idx = 0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        int s = side(traj.values[i]);
        if (s == 0) continue;
        if (last_side != 0 && s != last_side) {
            // Full traversal between last_idx and i; locate the midpoint pass.
            double t_mid = traj.times[i];
            for (std::size_t j = last_idx + 1; j <= i; ++j) {
                double v0 = traj.values[j - 1], v1 = traj.values[j];
                if ((v0 - mid) * (v1 - mid) <= 0.0 && v0 != v1) {
                    double w = (mid - v0) / (v1 - v0);
                    t_mid = traj.times[j - 1] + w * (traj.times[j] - traj.times[j - 1]);
                    break;
                }
            }
            out.push_back({traj.scheme, t_mid, traj.f_at(t_mid), s, kind,
                           traj.values[last_idx], traj.values[i]});
        }
        last_side = s;
        last_idx = i;
    }
}

} // namespace

std::vector<RealizedJump> extract_gap_crossings(const Trajectory& traj, const GapSet& gaps) {
    std::vector<RealizedJump> out;
    for (const auto& g : gaps.upper_gaps) collect_crossings(traj, g, 'u', out);
    for (const auto& g : gaps.lower_gaps) collect_crossings(traj, g, 'l', out);
    std::sort(out.begin(), out.end(),
              [](const RealizedJump& a, const RealizedJump& b) { return a.t_mid < b.t_mid; });
    return out;
}

HysteresisReport run_hysteresis(const EnergyLandscape& land, const Loading& loading,
                                const VVParams& vv, const MMParams& mm) {
    HysteresisReport rep;
    rep.gaps = land.gap_components(rep.envelope_resolution);

    if (!rep.gaps.hysteresis_gaps.empty()) {
        // Turning points must stay outside [gap_lo - 1, gap_hi + 1].
        double lo_bound = rep.gaps.hysteresis_gaps.front().lo - 1.0;
        double hi_bound = rep.gaps.hysteresis_gaps.back().hi + 1.0;
        const auto& bp = loading.breakpoints();
        for (std::size_t i = 1; i + 1 < bp.size(); ++i) {
            double f_turn = bp[i].second;
            if (f_turn > lo_bound && f_turn < hi_bound)
                rep.warnings.push_back("loading turns at f = " + std::to_string(f_turn) +
                                       " inside the hysteresis safety interval");
        }
    }

    rep.vis = run_viscous(land, loading, vv, 0.0);
    rep.mm = run_minimizing_movements(land, loading, mm, 0.0);
    rep.vis.jumps = annotate_jumps(rep.vis, rep.gaps);
    rep.mm.jumps = annotate_jumps(rep.mm, rep.gaps);

    rep.predicted = predict_jumps(land, loading);
    rep.realized = extract_gap_crossings(rep.vis, rep.gaps);
    auto mm_real = extract_gap_crossings(rep.mm, rep.gaps);
    rep.realized.insert(rep.realized.end(), mm_real.begin(), mm_real.end());
    return rep;
}

} // namespace rievolve
