// Piecewise-linear loading f(t) with per-segment monotonicity metadata.
#ifndef RIEVOLVE_LOADING_HPP
#define RIEVOLVE_LOADING_HPP

#include <string>
#include <vector>

namespace rievolve {

class Loading {
public:
    /// Monotone piece of the loading between two breakpoint times.
    struct Segment {
        double t0;
        double t1;
        double slope;
        int direction; // +1 increasing, -1 decreasing, 0 flat
    };

    Loading() = default;
    /// Breakpoints (t, f(t)); times strictly increasing, first time 0.
    explicit Loading(std::vector<std::pair<double, double>> breakpoints);

    /// The standard triangle-wave loading on [0, 16]:
    /// t, then 8 - t, then t - 12.
    static Loading paper_f();
    static Loading ramp(double slope, double T); // f(t) = slope * t

    double value(double t) const;
    double t_begin() const { return bp_.front().first; }
    double t_end() const { return bp_.back().first; }
    double f_min() const;
    double f_max() const;

    /// Maximal monotone pieces (consecutive same-sign slopes merged).
    std::vector<Segment> segments() const;
    bool increasing_on(double t0, double t1) const;
    /// Times within [seg.t0, seg.t1] where f crosses `level` (at most one
    /// per monotone segment).
    std::vector<double> crossing_times(const Segment& seg, double level) const;

    const std::vector<std::pair<double, double>>& breakpoints() const { return bp_; }
    /// Non-fatal construction diagnostics (|f(0)| > 1 and the like).
    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    std::vector<std::pair<double, double>> bp_;
    std::vector<std::string> warnings_;
};

} // namespace rievolve

#endif
