// Time series produced by the evolution solvers, with jump annotations.
#ifndef RIEVOLVE_TRAJECTORY_HPP
#define RIEVOLVE_TRAJECTORY_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace rievolve {

struct GapSet;

enum class Scheme { vv, mm, vv_limit };

std::string scheme_name(Scheme s);
Scheme scheme_by_name(const std::string& name);

/// A step exceeding the jump threshold; both one-sided values are kept.
struct JumpEvent {
    double t;
    double u_before;
    double u_after;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<double> values;
    std::vector<double> f_values; // loading sampled at `times`
    Scheme scheme = Scheme::mm;
    double eps = 0.0;    // 0 for mm
    double step = 0.0;   // h for vv, T/N for mm
    std::vector<JumpEvent> jumps;

    std::size_t size() const { return times.size(); }
    /// Left-constant sample (the interpolant convention of both schemes).
    double value_at(double t) const;
    double f_at(double t) const;
    /// Restriction to the window [t0, t1] (samples with t0 <= t <= t1).
    Trajectory window(double t0, double t1) const;
};

/// Flags steps whose increment exceeds both 10x the median increment and a
/// tenth of the smallest envelope gap width.
std::vector<JumpEvent> annotate_jumps(const Trajectory& traj, const GapSet& gaps);

} // namespace rievolve

#endif
