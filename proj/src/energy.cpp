#include "rievolve/energy.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rievolve/errors.hpp"

namespace rievolve {

double EnvelopeTable::value(double x) const {
    if (values.empty()) return 0.0;
    if (x <= x0) return values.front();
    double pos = (x - x0) / dx;
    auto i = static_cast<std::size_t>(pos);
    if (i + 1 >= values.size()) return values.back();
    double w = pos - static_cast<double>(i);
    return values[i] + w * (values[i + 1] - values[i]);
}

double GapSet::smallest_gap_width() const {
    double w = std::numeric_limits<double>::infinity();
    for (const auto& g : upper_gaps) w = std::min(w, g.width());
    for (const auto& g : lower_gaps) w = std::min(w, g.width());
    for (const auto& g : hysteresis_gaps) w = std::min(w, g.width());
    return w;
}

namespace {

double horner(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) v = v * x + c[k];
    return v;
}

std::vector<double> poly_derivative(const std::vector<double>& c) {
    std::vector<double> d;
    for (std::size_t k = 1; k < c.size(); ++k) d.push_back(c[k] * static_cast<double>(k));
    if (d.empty()) d.push_back(0.0);
    return d;
}

std::vector<double> poly_antiderivative(const std::vector<double>& c) {
    std::vector<double> p(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) p[k + 1] = c[k] / static_cast<double>(k + 1);
    return p;
}

} // namespace

EnergyLandscape EnergyLandscape::cubic_paper() {
    return polynomial({0.0, 5.5, -4.5, 1.0}, -1.5, 4.0, "cubic_paper");
}

EnergyLandscape EnergyLandscape::polynomial(std::vector<double> coeffs, double x_lo,
                                            double x_hi, std::string name) {
    if (coeffs.empty()) throw ConfigError("polynomial energy needs coefficients");
    EnergyLandscape l;
    l.kind_ = Kind::Poly;
    l.coeffs_ = std::move(coeffs);
    l.x_lo_ = x_lo;
    l.x_hi_ = x_hi;
    l.name_ = std::move(name);
    l.finalize();
    return l;
}

EnergyLandscape EnergyLandscape::from_table(std::vector<double> xs, std::vector<double> ys,
                                            std::string name) {
    if (xs.size() < 2 || xs.size() != ys.size())
        throw ConfigError("table energy needs matching x/y nodes (>= 2)");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1])) throw ConfigError("table energy nodes must be increasing");
    EnergyLandscape l;
    l.kind_ = Kind::Table;
    l.xs_ = std::move(xs);
    l.ys_ = std::move(ys);
    l.x_lo_ = l.xs_.front();
    l.x_hi_ = l.xs_.back();
    l.name_ = std::move(name);
    l.finalize();
    return l;
}

void EnergyLandscape::finalize() {
    if (!(x_lo_ < x_hi_)) throw ConfigError("energy bracket must have x_lo < x_hi");
    if (!(x_lo_ <= 0.0 && 0.0 <= x_hi_))
        throw ConfigError("energy bracket must contain 0 (E integrates from 0)");

    if (kind_ == Kind::Table) {
        // Cumulative trapezoid integral at the nodes; exact for the lerp.
        cumE_.assign(xs_.size(), 0.0);
        for (std::size_t i = 1; i < xs_.size(); ++i)
            cumE_[i] = cumE_[i - 1] +
                       0.5 * (ys_[i] + ys_[i - 1]) * (xs_[i] - xs_[i - 1]);
        lipschitz_ = 0.0;
        for (std::size_t i = 1; i < xs_.size(); ++i)
            lipschitz_ = std::max(lipschitz_,
                                  std::abs((ys_[i] - ys_[i - 1]) / (xs_[i] - xs_[i - 1])));
    } else {
        lipschitz_ = lipschitz_on(x_lo_, x_hi_);
    }

    double e0 = e(0.0);
    if (std::abs(e0) > 1e-12) throw ConfigError("energy derivative must satisfy e(0) = 0");

    // Scan for zeros away from the origin; violations disable lemma checks
    // downstream but do not block construction.
    const int n = 2048;
    for (int i = 0; i <= n; ++i) {
        double x = x_lo_ + (x_hi_ - x_lo_) * static_cast<double>(i) / n;
        if (std::abs(x) < 1e-9) continue;
        double v = e(x);
        if ((x > 0.0 && v <= 0.0) || (x < 0.0 && v >= 0.0)) {
            zero_only_at_origin_ = false;
            break;
        }
    }
}

double EnergyLandscape::e(double x) const {
    if (kind_ == Kind::Poly) return horner(coeffs_, x);
    if (x <= xs_.front())
        return ys_.front() + (x - xs_.front()) * (ys_[1] - ys_[0]) / (xs_[1] - xs_[0]);
    if (x >= xs_.back()) {
        std::size_t n = xs_.size();
        return ys_.back() +
               (x - xs_.back()) * (ys_[n - 1] - ys_[n - 2]) / (xs_[n - 1] - xs_[n - 2]);
    }
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - xs_.begin());
    double w = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
    return ys_[i - 1] + w * (ys_[i] - ys_[i - 1]);
}

double EnergyLandscape::derivative(double x) const {
    if (kind_ == Kind::Poly) return horner(poly_derivative(coeffs_), x);
    double h = 1e-7 * (1.0 + std::abs(x));
    return (e(x + h) - e(x - h)) / (2.0 * h);
}

double EnergyLandscape::antiderivative(double a) const {
    double slack = 1e-9 * (1.0 + std::abs(x_lo_) + std::abs(x_hi_));
    if (a < x_lo_ - slack || a > x_hi_ + slack)
        throw OutOfBracket("antiderivative argument outside the working bracket");
    if (kind_ == Kind::Poly) return horner(poly_antiderivative(coeffs_), a);
    // Table: integral of the lerp from 0 to a via the cumulative nodes.
    auto cum_at = [&](double x) {
        if (x <= xs_.front())
            return cumE_.front() - 0.5 * (e(x) + ys_.front()) * (xs_.front() - x);
        if (x >= xs_.back())
            return cumE_.back() + 0.5 * (e(x) + ys_.back()) * (x - xs_.back());
        auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
        std::size_t i = static_cast<std::size_t>(it - xs_.begin());
        return cumE_[i - 1] + 0.5 * (e(x) + ys_[i - 1]) * (x - xs_[i - 1]);
    };
    return cum_at(a) - cum_at(0.0);
}

Envelopes EnergyLandscape::monotone_envelopes(std::size_t resolution) const {
    if (resolution < 2) throw ConfigError("envelope resolution must be >= 2");
    Envelopes env;
    double dx = (x_hi_ - x_lo_) / static_cast<double>(resolution - 1);
    env.lower.x0 = env.upper.x0 = x_lo_;
    env.lower.dx = env.upper.dx = dx;
    env.lower.values.resize(resolution);
    env.upper.values.resize(resolution);

    std::vector<double>& lo = env.lower.values;
    std::vector<double>& up = env.upper.values;
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(resolution); ++i)
        up[static_cast<std::size_t>(i)] = e(x_lo_ + dx * static_cast<double>(i));
    lo = up;

    // e^m: running sup from the left; e_m: running inf from the right.
    for (std::size_t i = 1; i < resolution; ++i) up[i] = std::max(up[i], up[i - 1]);
    for (std::size_t i = resolution - 1; i-- > 0;) lo[i] = std::min(lo[i], lo[i + 1]);
    return env;
}

CriticalPoints EnergyLandscape::critical_points() const {
    CriticalPoints cp;
    const std::size_t n = 200001;
    double dx = (x_hi_ - x_lo_) / static_cast<double>(n - 1);
    double prev_x = x_lo_;
    double prev_d = derivative(prev_x);
    for (std::size_t i = 1; i < n; ++i) {
        double x = x_lo_ + dx * static_cast<double>(i);
        double d = derivative(x);
        if ((prev_d > 0.0 && d < 0.0) || (prev_d < 0.0 && d > 0.0)) {
            double a = prev_x, b = x, da = prev_d;
            for (int it = 0; it < 100 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
                double m = 0.5 * (a + b);
                double dm = derivative(m);
                if ((da > 0.0) == (dm > 0.0)) {
                    a = m;
                    da = dm;
                } else {
                    b = m;
                }
            }
            double xc = 0.5 * (a + b);
            if (prev_d > 0.0)
                cp.local_maxima.emplace_back(xc, e(xc));
            else
                cp.local_minima.emplace_back(xc, e(xc));
        }
        prev_x = x;
        prev_d = d;
    }
    return cp;
}

double EnergyLandscape::max_preimage(double y) const {
    // Bisection on each monotone piece between critical points; the largest
    // root wins. Touching levels (y exactly a critical value) resolve to the
    // critical point itself.
    CriticalPoints cp = critical_points();
    std::vector<double> knots{x_lo_};
    for (const auto& p : cp.local_maxima) knots.push_back(p.first);
    for (const auto& p : cp.local_minima) knots.push_back(p.first);
    knots.push_back(x_hi_);
    std::sort(knots.begin(), knots.end());

    double touch_tol = 1e-11 * (1.0 + std::abs(y));
    bool found = false;
    double best = 0.0;
    auto consider = [&](double x) {
        if (!found || x > best) best = x;
        found = true;
    };
    for (std::size_t k = 1; k < knots.size(); ++k) {
        double a = knots[k - 1], b = knots[k];
        double fa = e(a) - y, fb = e(b) - y;
        if (std::abs(fa) <= touch_tol) consider(a);
        if (std::abs(fb) <= touch_tol) consider(b);
        if (fa * fb >= 0.0) continue;
        for (int it = 0; it < 200 && b - a > 1e-14 * (1.0 + std::abs(b)); ++it) {
            double m = 0.5 * (a + b);
            double fm = e(m) - y;
            if ((fa > 0.0) == (fm > 0.0)) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        consider(0.5 * (a + b));
    }
    if (!found) throw NoPreimage("level has no preimage in the bracket");
    return best;
}

GapSet EnergyLandscape::gap_components(std::size_t resolution) const {
    double scale = std::max(std::abs(e(x_lo_)), std::abs(e(x_hi_)));
    return gap_components(resolution, 1e-9 * (1.0 + scale));
}

GapSet EnergyLandscape::gap_components(std::size_t resolution, double tol) const {
    Envelopes env = monotone_envelopes(resolution);
    GapSet gs;

    auto collect = [&](auto diff_at, std::vector<OpenInterval>& out) {
        double dx = env.lower.dx;
        bool inside = false;
        double start = 0.0;
        auto refine = [&](double a, double b) {
            // diff crosses tol between a and b.
            double da = diff_at(a) - tol;
            for (int it = 0; it < 80; ++it) {
                double m = 0.5 * (a + b);
                double dm = diff_at(m) - tol;
                if ((da <= 0.0) == (dm <= 0.0)) {
                    a = m;
                    da = dm;
                } else {
                    b = m;
                }
            }
            return 0.5 * (a + b);
        };
        for (std::size_t i = 0; i < resolution; ++i) {
            double x = env.lower.x_at(i);
            bool in = diff_at(x) > tol;
            if (in && !inside) {
                start = i == 0 ? x : refine(env.lower.x_at(i - 1), x);
                inside = true;
            } else if (!in && inside) {
                out.push_back({start, refine(x, env.lower.x_at(i - 1))});
                inside = false;
            }
        }
        if (inside) out.push_back({start, x_hi_});
        (void)dx;
    };

    collect([&](double x) { return env.upper.value(x) - e(x); }, gs.upper_gaps);
    collect([&](double x) { return e(x) - env.lower.value(x); }, gs.lower_gaps);
    collect([&](double x) { return env.upper.value(x) - env.lower.value(x); },
            gs.hysteresis_gaps);
    return gs;
}

EnvelopeOracle::EnvelopeOracle(const EnergyLandscape& land)
    : land_(&land),
      cp_(land.critical_points()),
      e_at_lo_(land.e(land.x_lo())),
      e_at_hi_(land.e(land.x_hi())) {}

double EnvelopeOracle::lower(double x) const {
    double v = std::min(land_->e(x), e_at_hi_);
    for (const auto& [c, ec] : cp_.local_minima)
        if (c >= x) v = std::min(v, ec);
    return v;
}

double EnvelopeOracle::upper(double x) const {
    double v = std::max(land_->e(x), e_at_lo_);
    for (const auto& [c, ec] : cp_.local_maxima)
        if (c <= x) v = std::max(v, ec);
    return v;
}

EnergyLandscape EnergyLandscape::reflected() const {
    if (kind_ == Kind::Poly) {
        std::vector<double> c = coeffs_;
        for (std::size_t k = 0; k < c.size(); ++k)
            if (k % 2 == 0) c[k] = -c[k];
        return polynomial(std::move(c), -x_hi_, -x_lo_, name_ + "_reflected");
    }
    std::vector<double> xs(xs_.rbegin(), xs_.rend());
    std::vector<double> ys(ys_.rbegin(), ys_.rend());
    for (auto& x : xs) x = -x;
    for (auto& y : ys) y = -y;
    return from_table(std::move(xs), std::move(ys), name_ + "_reflected");
}

void EnergyLandscape::expand_bracket_to_cover(double f_min, double f_max) {
    int guard = 0;
    while (e(x_lo_) >= f_min - 1.0 && guard++ < 200) x_lo_ -= 0.5;
    guard = 0;
    while (e(x_hi_) <= f_max + 1.0 && guard++ < 200) x_hi_ += 0.5;
    if (kind_ == Kind::Poly) lipschitz_ = lipschitz_on(x_lo_, x_hi_);
}

double EnergyLandscape::lipschitz_on(double a, double b) const {
    a = std::max(a, x_lo_);
    b = std::min(b, x_hi_);
    if (!(a < b)) return lipschitz_;
    if (kind_ == Kind::Table) {
        double L = 0.0;
        for (std::size_t i = 1; i < xs_.size(); ++i) {
            if (xs_[i] < a || xs_[i - 1] > b) continue;
            L = std::max(L, std::abs((ys_[i] - ys_[i - 1]) / (xs_[i] - xs_[i - 1])));
        }
        return L;
    }
    // Poly: |e'| attains its max at the endpoints or at zeros of e''.
    std::vector<double> d1 = poly_derivative(coeffs_);
    std::vector<double> d2 = poly_derivative(d1);
    double L = std::max(std::abs(horner(d1, a)), std::abs(horner(d1, b)));
    const int n = 512;
    double prev_x = a;
    double prev_v = horner(d2, prev_x);
    for (int i = 1; i <= n; ++i) {
        double x = a + (b - a) * static_cast<double>(i) / n;
        double v = horner(d2, x);
        if ((prev_v > 0.0 && v < 0.0) || (prev_v < 0.0 && v > 0.0)) {
            double lo = prev_x, hi = x, vlo = prev_v;
            for (int it = 0; it < 80; ++it) {
                double m = 0.5 * (lo + hi);
                double vm = horner(d2, m);
                if ((vlo > 0.0) == (vm > 0.0)) {
                    lo = m;
                    vlo = vm;
                } else {
                    hi = m;
                }
            }
            L = std::max(L, std::abs(horner(d1, 0.5 * (lo + hi))));
        }
        prev_x = x;
        prev_v = v;
    }
    return L;
}

} // namespace rievolve
