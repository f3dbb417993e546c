#include "rievolve/loading.hpp"

#include <algorithm>
#include <cmath>

#include "rievolve/errors.hpp"

namespace rievolve {

Loading::Loading(std::vector<std::pair<double, double>> breakpoints) : bp_(std::move(breakpoints)) {
    if (bp_.size() < 2) throw ConfigError("loading needs at least two breakpoints");
    if (bp_.front().first != 0.0) throw ConfigError("loading must start at t = 0");
    for (std::size_t i = 1; i < bp_.size(); ++i)
        if (!(bp_[i].first > bp_[i - 1].first))
            throw ConfigError("loading times must be strictly increasing");
    if (std::abs(bp_.front().second) > 1.0)
        warnings_.push_back("|f(0)| > 1: the initial state may not be stable");
}

Loading Loading::paper_f() {
    return Loading({{0.0, 0.0}, {4.0, 4.0}, {10.0, -2.0}, {16.0, 4.0}});
}

Loading Loading::ramp(double slope, double T) {
    return Loading({{0.0, 0.0}, {T, slope * T}});
}

double Loading::value(double t) const {
    if (t <= bp_.front().first) return bp_.front().second;
    if (t >= bp_.back().first) return bp_.back().second;
    auto it = std::upper_bound(bp_.begin(), bp_.end(), t,
                               [](double x, const std::pair<double, double>& b) {
                                   return x < b.first;
                               });
    const auto& r = *it;
    const auto& l = *(it - 1);
    double w = (t - l.first) / (r.first - l.first);
    return l.second + w * (r.second - l.second);
}

double Loading::f_min() const {
    double m = bp_.front().second;
    for (const auto& b : bp_) m = std::min(m, b.second);
    return m;
}

double Loading::f_max() const {
    double m = bp_.front().second;
    for (const auto& b : bp_) m = std::max(m, b.second);
    return m;
}

std::vector<Loading::Segment> Loading::segments() const {
    std::vector<Segment> segs;
    for (std::size_t i = 1; i < bp_.size(); ++i) {
        double dt = bp_[i].first - bp_[i - 1].first;
        double slope = (bp_[i].second - bp_[i - 1].second) / dt;
        int dir = slope > 0.0 ? +1 : slope < 0.0 ? -1 : 0;
        if (!segs.empty() && segs.back().direction == dir) {
            segs.back().t1 = bp_[i].first;
            // keep the first piece's slope as representative only when equal
            if (segs.back().slope != slope) segs.back().slope = std::nan("");
        } else {
            segs.push_back({bp_[i - 1].first, bp_[i].first, slope, dir});
        }
    }
    return segs;
}

bool Loading::increasing_on(double t0, double t1) const {
    for (std::size_t i = 1; i < bp_.size(); ++i) {
        if (bp_[i].first <= t0 || bp_[i - 1].first >= t1) continue;
        if (bp_[i].second < bp_[i - 1].second) return false;
    }
    return true;
}

std::vector<double> Loading::crossing_times(const Segment& seg, double level) const {
    std::vector<double> out;
    for (std::size_t i = 1; i < bp_.size(); ++i) {
        double ta = bp_[i - 1].first, tb = bp_[i].first;
        if (tb <= seg.t0 || ta >= seg.t1) continue;
        double fa = bp_[i - 1].second, fb = bp_[i].second;
        if (fa == fb) continue;
        double w = (level - fa) / (fb - fa);
        if (w >= 0.0 && w <= 1.0) out.push_back(ta + w * (tb - ta));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace rievolve
