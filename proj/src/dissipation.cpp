#include "rievolve/dissipation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rievolve/errors.hpp"

namespace rievolve {

DissipationMap DissipationMap::sign_subdifferential() {
    DissipationMap m;
    m.kind_ = Kind::SignSubdifferential;
    m.name_ = "sign_subdifferential";
    m.s_max_ = 1.0;
    m.monotone_ = true;
    return m;
}

DissipationMap DissipationMap::sticktion() {
    DissipationMap m;
    m.kind_ = Kind::Sticktion;
    m.name_ = "sticktion";
    m.s_max_ = std::numeric_limits<double>::infinity(); // |sgn(a)+a| unbounded
    m.monotone_ = false;
    return m;
}

DissipationMap DissipationMap::from_table(std::string name, std::vector<Breakpoint> rows,
                                          bool monotone_graph) {
    if (rows.empty()) throw ConfigError("dissipation table needs at least one breakpoint");
    std::sort(rows.begin(), rows.end(),
              [](const Breakpoint& x, const Breakpoint& y) { return x.a < y.a; });
    DissipationMap m;
    m.kind_ = Kind::Table;
    m.name_ = std::move(name);
    m.monotone_ = monotone_graph;
    m.table_ = std::move(rows);
    double s = 0.0;
    for (const auto& r : m.table_) {
        if (r.lo > r.hi) throw ConfigError("dissipation breakpoint with lo > hi");
        s = std::max({s, std::abs(r.lo), std::abs(r.hi)});
    }
    m.s_max_ = s;
    return m;
}

DissipationMap DissipationMap::by_name(const std::string& name) {
    if (name == "sign_subdifferential") return sign_subdifferential();
    if (name == "sticktion") return sticktion();
    throw ConfigError("unknown dissipation map: " + name);
}

IntervalValue DissipationMap::eval(double a) const {
    switch (kind_) {
    case Kind::SignSubdifferential:
        if (a == 0.0) return {-1.0, 1.0};
        return {a > 0.0 ? 1.0 : -1.0};
    case Kind::Sticktion:
        if (a == 0.0) return {-2.0, 2.0};
        return {(a > 0.0 ? 1.0 : -1.0) + a};
    case Kind::Table: {
        if (a <= table_.front().a) return {table_.front().lo, table_.front().hi};
        if (a >= table_.back().a) return {table_.back().lo, table_.back().hi};
        auto it = std::upper_bound(table_.begin(), table_.end(), a,
                                   [](double x, const Breakpoint& r) { return x < r.a; });
        const Breakpoint& r = *it;
        const Breakpoint& l = *(it - 1);
        double w = (a - l.a) / (r.a - l.a);
        return {l.lo + w * (r.lo - l.lo), l.hi + w * (r.hi - l.hi)};
    }
    }
    return {0.0};
}

bool DissipationMap::contains(double a, double g, double tol) const {
    return eval(a).contains(g, tol);
}

namespace {

// Residual trichotomy for the inclusion eps*a + S(a) ∋ g at candidate a:
// +1: a too small (g - eps*a above hi), -1: too large, 0: satisfied.
int residual_side(const DissipationMap& map, double eps, double g, double a) {
    IntervalValue s = map.eval(a);
    double r = g - eps * a;
    if (r > s.hi) return +1;
    if (r < s.lo) return -1;
    return 0;
}

double bisect_inclusion(const DissipationMap& map, double eps, double g, double a_lo,
                        double a_hi) {
    // a_lo sits on the +1 side, a_hi on the -1 side (or either already inside).
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (a_lo + a_hi);
        int side = residual_side(map, eps, g, mid);
        if (side == 0) return mid;
        if (side > 0)
            a_lo = mid;
        else
            a_hi = mid;
        if (a_hi - a_lo <= 1e-16 * (1.0 + std::abs(a_lo) + std::abs(a_hi))) break;
    }
    return 0.5 * (a_lo + a_hi);
}

double resolvent_table(const DissipationMap& map, double eps, double g) {
    double s_max = std::isfinite(map.s_max()) ? map.s_max() : std::abs(g) + 1.0;
    double radius = (std::abs(g) + s_max) / eps + 1.0;
    double lo = -radius, hi = radius;

    if (map.monotone()) {
        // Residual side is monotone in a, so plain bisection applies.
        int side_lo = residual_side(map, eps, g, lo);
        int side_hi = residual_side(map, eps, g, hi);
        if (side_lo == 0) return lo;
        if (side_hi == 0) return hi;
        if (side_lo < 0 || side_hi > 0)
            throw NoSolution("inclusion bracket does not straddle a solution");
        return bisect_inclusion(map, eps, g, lo, hi);
    }

    // Non-monotone user map: stick priority, then scan the bracket for a
    // sliding-branch sign change and return the solution closest to zero.
    if (map.eval(0.0).contains(g, 0.0)) return 0.0;
    const int n = 4097;
    double best = std::numeric_limits<double>::quiet_NaN();
    double prev_a = lo;
    int prev_side = residual_side(map, eps, g, prev_a);
    for (int i = 1; i < n; ++i) {
        double a = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
        int side = residual_side(map, eps, g, a);
        if (side == 0 || (prev_side > 0 && side < 0) || (prev_side < 0 && side > 0)) {
            double root = side == 0 ? a
                          : prev_side > 0 ? bisect_inclusion(map, eps, g, prev_a, a)
                                          : bisect_inclusion(map, eps, g, a, prev_a);
            if (!std::isfinite(best) || std::abs(root) < std::abs(best)) best = root;
        }
        prev_a = a;
        prev_side = side;
    }
    if (!std::isfinite(best))
        throw NoSolution("no branch of the non-monotone inclusion admits a solution");
    return best;
}

} // namespace

double viscous_resolvent(const DissipationMap& map, double eps, double g) {
    if (!(eps > 0.0)) throw ConfigError("viscous_resolvent needs eps > 0");
    switch (map.kind()) {
    case DissipationMap::Kind::SignSubdifferential:
        return soft_threshold(g, 1.0) / eps;
    case DissipationMap::Kind::Sticktion:
        // Stick priority: the static interval [-2, 2] wins whenever it can.
        if (g >= -2.0 && g <= 2.0) return 0.0;
        return (g > 0.0 ? g - 1.0 : g + 1.0) / (1.0 + eps);
    case DissipationMap::Kind::Table:
        return resolvent_table(map, eps, g);
    }
    return 0.0;
}

ConditionReport check_conditions(const DissipationMap& map,
                                 std::span<const double> sample_grid, double tol) {
    ConditionReport rep;
    rep.note = "C1/C2 are grid proxies over adjacent samples, not proofs";
    if (sample_grid.empty()) return rep;

    std::vector<IntervalValue> vals(sample_grid.size());
    for (std::size_t i = 0; i < sample_grid.size(); ++i) vals[i] = map.eval(sample_grid[i]);

    double run_sup = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const IntervalValue& s = vals[i];
        if (!std::isfinite(s.lo) || !std::isfinite(s.hi)) {
            rep.c3_pass = false;
            rep.worst_location = sample_grid[i];
            continue;
        }
        double mag = std::max(std::abs(s.lo), std::abs(s.hi));
        rep.s_max_observed = std::max(rep.s_max_observed, mag);
        if (std::isfinite(map.s_max())) {
            double over = mag - map.s_max();
            if (over > rep.worst_s2) {
                rep.worst_s2 = over;
                if (over > tol) rep.worst_location = sample_grid[i];
            }
        }
        // Monotone-graph check in the running form: every earlier sup must
        // stay below the current inf (pairwise over the sorted grid).
        if (i > 0) {
            double viol = run_sup - s.lo;
            if (viol > rep.worst_s1) {
                rep.worst_s1 = viol;
                if (viol > tol) rep.worst_location = sample_grid[i];
            }
        }
        run_sup = std::max(run_sup, s.hi);

        if (i > 0) {
            const IntervalValue& p = vals[i - 1];
            double gap = interval_gap(p, s);
            if (gap > rep.worst_c2) rep.worst_c2 = gap;
            double fwd = std::max(s.dist(p.lo), s.dist(p.hi)); // prev endpoints vs current
            double bwd = std::max(p.dist(s.lo), p.dist(s.hi)); // current endpoints vs prev
            double c1 = std::min(fwd, bwd);
            if (c1 > rep.worst_c1) rep.worst_c1 = c1;
        }
    }
    rep.s1_pass = rep.worst_s1 <= tol;
    rep.s2_pass = rep.worst_s2 <= tol;
    rep.c1_proxy_pass = rep.worst_c1 <= tol;
    rep.c2_proxy_pass = rep.worst_c2 <= tol;
    return rep;
}

} // namespace rievolve
