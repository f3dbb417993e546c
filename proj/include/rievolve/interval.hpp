// Closed-interval values for set-valued maps.
#ifndef RIEVOLVE_INTERVAL_HPP
#define RIEVOLVE_INTERVAL_HPP

#include <algorithm>
#include <cassert>
#include <cmath>

namespace rievolve {

/// A nonempty closed interval [lo, hi]; a singleton when lo == hi.
struct IntervalValue {
    double lo = 0.0;
    double hi = 0.0;

    IntervalValue() = default;
    IntervalValue(double a) : lo(a), hi(a) {}
    IntervalValue(double a, double b) : lo(a), hi(b) { assert(lo <= hi); }

    bool singleton() const { return lo == hi; }
    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }

    bool contains(double g, double tol = 0.0) const {
        return g >= lo - tol && g <= hi + tol;
    }

    /// Distance from g to the interval (0 when inside).
    double dist(double g) const {
        if (g < lo) return lo - g;
        if (g > hi) return g - hi;
        return 0.0;
    }
};

/// Gap between two intervals; 0 when they intersect.
inline double interval_gap(const IntervalValue& a, const IntervalValue& b) {
    return std::max({a.lo - b.hi, b.lo - a.hi, 0.0});
}

inline double clamp_to(const IntervalValue& iv, double g) {
    return std::clamp(g, iv.lo, iv.hi);
}

} // namespace rievolve

#endif
