// Test-only oracles, independent of the library's solution paths.
#ifndef RIEVOLVE_TESTS_ORACLES_HPP
#define RIEVOLVE_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "rievolve/energy.hpp"
#include "rievolve/loading.hpp"

namespace oracles {

/// Adaptive Simpson quadrature to ~1e-12 relative accuracy.
inline double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                          double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1);
}

inline double quadrature(const std::function<double(double)>& f, double a, double b,
                         double tol = 1e-13) {
    if (a == b) return 0.0;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

/// Exact play-operator solution of dR(u') + u ∋ f for piecewise-linear f:
/// the clamp recursion u <- clamp(u, f - 1, f + 1) is exact at any sample
/// set refining the monotone segments.
inline double play_exact(const rievolve::Loading& loading, double t, double u0 = 0.0) {
    std::vector<double> knots;
    for (const auto& bp : loading.breakpoints())
        if (bp.first < t) knots.push_back(bp.first);
    knots.push_back(t);
    double u = u0;
    for (double s : knots) {
        double f = loading.value(s);
        u = std::min(std::max(u, f - 1.0), f + 1.0);
    }
    return u;
}

/// Dense enumeration of the local minimizers of
/// Phi(q) = E(q) - f q + |q - q_prev| followed by the direction-extremal
/// selection; a direct rendering of the incremental rule at fixed grid
/// resolution, independent of the solver's scan/golden/polish path.
inline double mm_step_dense(const rievolve::EnergyLandscape& land, double f, double q_prev,
                            int direction, std::size_t points = 2000001) {
    auto phi = [&](double q) {
        return land.antiderivative(q) - f * q + std::abs(q - q_prev);
    };
    double a = land.x_lo(), b = land.x_hi();
    double best = q_prev;
    bool found = false;
    double p_prev2 = phi(a);
    double q1 = a + (b - a) / static_cast<double>(points - 1);
    double p_prev = phi(q1);
    for (std::size_t i = 2; i < points; ++i) {
        double q = a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1);
        double p = phi(q);
        if (p_prev <= p_prev2 && p_prev <= p) {
            double qm = q - (b - a) / static_cast<double>(points - 1);
            if (!found || (direction >= 0 ? qm > best : qm < best)) best = qm;
            found = true;
        }
        p_prev2 = p_prev;
        p_prev = p;
    }
    return best;
}

/// O(n^2) suffix-infimum / prefix-supremum envelopes on a sample grid.
struct BruteEnvelopes {
    std::vector<double> xs, lower, upper;
};

inline BruteEnvelopes brute_envelopes(const rievolve::EnergyLandscape& land, std::size_t n) {
    BruteEnvelopes out;
    out.xs.resize(n);
    out.lower.resize(n);
    out.upper.resize(n);
    std::vector<double> e(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.xs[i] = land.x_lo() +
                    (land.x_hi() - land.x_lo()) * static_cast<double>(i) / static_cast<double>(n - 1);
        e[i] = land.e(out.xs[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        double lo = e[i], hi = e[i];
        for (std::size_t j = i; j < n; ++j) lo = std::min(lo, e[j]);
        for (std::size_t j = 0; j <= i; ++j) hi = std::max(hi, e[j]);
        out.lower[i] = lo;
        out.upper[i] = hi;
    }
    return out;
}

/// All roots of e(x) = y by bisection on the monotone pieces between the
/// critical points; returns them sorted.
inline std::vector<double> preimages(const rievolve::EnergyLandscape& land, double y) {
    std::vector<double> knots{land.x_lo()};
    rievolve::CriticalPoints cp = land.critical_points();
    for (const auto& p : cp.local_maxima) knots.push_back(p.first);
    for (const auto& p : cp.local_minima) knots.push_back(p.first);
    knots.push_back(land.x_hi());
    std::sort(knots.begin(), knots.end());
    std::vector<double> roots;
    for (std::size_t k = 1; k < knots.size(); ++k) {
        double a = knots[k - 1], b = knots[k];
        double fa = land.e(a) - y, fb = land.e(b) - y;
        if (fa == 0.0) roots.push_back(a);
        if (fb == 0.0) roots.push_back(b);
        if (fa * fb >= 0.0) continue;
        for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(b)); ++it) {
            double m = 0.5 * (a + b);
            double fm = land.e(m) - y;
            if ((fa > 0.0) == (fm > 0.0)) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        roots.push_back(0.5 * (a + b));
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double p, double q) { return std::abs(p - q) < 1e-9; }),
                roots.end());
    return roots;
}

/// Random coercive cubic e(x) = x (x^2 + b x + c) with c > b^2/4, so e
/// vanishes only at the origin and e'(0) = c > 0.
inline rievolve::EnergyLandscape random_cubic(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> bdist(-5.0, 5.0);
    std::uniform_real_distribution<double> cgap(0.1, 3.0);
    double b = bdist(rng);
    double c = b * b / 4.0 + cgap(rng);
    // bracket wide enough for loadings with |f| <= 4
    double lo = -1.0, hi = 1.0;
    auto e = [&](double x) { return x * (x * x + b * x + c); };
    while (e(lo) > -6.0) lo -= 0.5;
    while (e(hi) < 6.0) hi += 0.5;
    return rievolve::EnergyLandscape::polynomial({0.0, c, b, 1.0}, lo, hi, "random_cubic");
}

/// Random strictly increasing piecewise-linear loading with f(0) in [0, 1)
/// that crosses 1 before the final time; capped at f = 3.5 so the random
/// cubics' brackets stay moderate.
inline rievolve::Loading random_increasing_loading(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nseg(1, 5);
    std::uniform_real_distribution<double> f0d(0.0, 0.9);
    std::uniform_real_distribution<double> slope(0.1, 2.0);
    std::uniform_real_distribution<double> dt(0.3, 1.5);
    int n = nseg(rng);
    std::vector<std::pair<double, double>> bp;
    double t = 0.0, f = f0d(rng);
    bp.emplace_back(t, f);
    for (int k = 0; k < n; ++k) {
        double step = dt(rng);
        t += step;
        f += slope(rng) * step;
        bp.emplace_back(t, f);
    }
    if (f <= 1.0) bp.emplace_back(t + 1.0, f + 1.5); // make sure 1 is crossed
    double f0 = bp.front().second, fmax = bp.back().second;
    if (fmax > 3.5) {
        double scale = (3.5 - f0) / (fmax - f0);
        for (auto& p : bp) p.second = f0 + (p.second - f0) * scale;
    }
    return rievolve::Loading(std::move(bp));
}

} // namespace oracles

#endif
