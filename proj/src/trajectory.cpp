#include "rievolve/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "rievolve/energy.hpp"
#include "rievolve/errors.hpp"

namespace rievolve {

std::string scheme_name(Scheme s) {
    switch (s) {
    case Scheme::vv: return "vv";
    case Scheme::mm: return "mm";
    case Scheme::vv_limit: return "vv_limit";
    }
    return "?";
}

Scheme scheme_by_name(const std::string& name) {
    if (name == "vv") return Scheme::vv;
    if (name == "mm") return Scheme::mm;
    if (name == "vv_limit") return Scheme::vv_limit;
    throw ConfigError("unknown scheme: " + name);
}

double Trajectory::value_at(double t) const {
    if (times.empty()) return 0.0;
    if (t <= times.front()) return values.front();
    auto it = std::upper_bound(times.begin(), times.end(), t);
    std::size_t i = static_cast<std::size_t>(it - times.begin());
    return values[std::min(i, values.size()) - 1];
}

double Trajectory::f_at(double t) const {
    if (times.empty()) return 0.0;
    if (t <= times.front()) return f_values.front();
    auto it = std::upper_bound(times.begin(), times.end(), t);
    std::size_t i = static_cast<std::size_t>(it - times.begin());
    return f_values[std::min(i, f_values.size()) - 1];
}

Trajectory Trajectory::window(double t0, double t1) const {
    Trajectory out;
    out.scheme = scheme;
    out.eps = eps;
    out.step = step;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t0 || times[i] > t1) continue;
        out.times.push_back(times[i]);
        out.values.push_back(values[i]);
        out.f_values.push_back(f_values[i]);
    }
    for (const auto& j : jumps)
        if (j.t >= t0 && j.t <= t1) out.jumps.push_back(j);
    return out;
}

std::vector<JumpEvent> annotate_jumps(const Trajectory& traj, const GapSet& gaps) {
    std::vector<JumpEvent> out;
    if (traj.size() < 3) return out;
    std::vector<double> incs;
    incs.reserve(traj.size() - 1);
    for (std::size_t i = 1; i < traj.size(); ++i)
        incs.push_back(std::abs(traj.values[i] - traj.values[i - 1]));
    std::vector<double> sorted = incs;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    double median = sorted[sorted.size() / 2];
    double gap_floor = gaps.smallest_gap_width();
    if (!std::isfinite(gap_floor)) return out; // monotone energy: no gaps, no jumps
    double threshold = std::max(10.0 * median, 0.1 * gap_floor);
    for (std::size_t i = 1; i < traj.size(); ++i)
        if (incs[i - 1] > threshold)
            out.push_back({traj.times[i], traj.values[i - 1], traj.values[i]});
    return out;
}

} // namespace rievolve
