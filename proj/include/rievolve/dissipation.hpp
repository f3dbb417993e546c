// Set-valued dissipation maps S : R -> closed intervals, their pointwise
// viscous resolvents, and grid checks of the structural conditions.
#ifndef RIEVOLVE_DISSIPATION_HPP
#define RIEVOLVE_DISSIPATION_HPP

#include <span>
#include <string>
#include <vector>

#include "rievolve/interval.hpp"

namespace rievolve {

/// Interval-valued dissipation map with the metadata the solvers rely on.
///
/// `monotone` means the map is increasing as a set-valued graph
/// (sup S(b) <= inf S(a) for a > b), which is the sign convention under
/// which the sign subdifferential qualifies and the sticktion map does not.
/// Solvers that require a monotone graph refuse non-monotone maps and fall
/// back to the stick-priority rule instead.
class DissipationMap {
public:
    enum class Kind { SignSubdifferential, Sticktion, Table };

    /// Breakpoint row of a user-supplied map: endpoints at abscissa a.
    struct Breakpoint {
        double a;
        double lo;
        double hi;
    };

    static DissipationMap sign_subdifferential();
    static DissipationMap sticktion();
    /// User map from a breakpoint table; endpoints interpolate linearly
    /// between breakpoints and extend by constants outside them.
    static DissipationMap from_table(std::string name, std::vector<Breakpoint> rows,
                                     bool monotone_graph);
    /// Resolve a config name (`sign_subdifferential`, `sticktion`).
    static DissipationMap by_name(const std::string& name);

    IntervalValue eval(double a) const;
    bool contains(double a, double g, double tol) const;

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    double s_max() const { return s_max_; }
    bool monotone() const { return monotone_; }

private:
    Kind kind_ = Kind::SignSubdifferential;
    std::string name_;
    double s_max_ = 1.0;
    bool monotone_ = true;
    std::vector<Breakpoint> table_;
};

/// Solves the regularized pointwise inclusion eps*a + S(a) ∋ g for a.
///
/// Closed forms for the two built-ins (soft threshold for the sign
/// subdifferential, stick-priority + sliding branch for sticktion); bracketed
/// bisection on the residual for user maps. Throws NoSolution when a
/// non-monotone user map admits no branch.
double viscous_resolvent(const DissipationMap& map, double eps, double g);

/// Soft threshold: sign(g) * max(|g| - threshold, 0).
inline double soft_threshold(double g, double threshold) {
    double m = std::abs(g) - threshold;
    return m > 0.0 ? (g > 0.0 ? m : -m) : 0.0;
}

/// Outcome of the structural-condition checks on a sample grid.
///
/// The graph-continuity checks are grid proxies, not proofs: c2_proxy asks
/// that adjacent sample intervals are within tol of each other (the paired
/// selection), c1_proxy that at endpoint jumps one side's endpoints land
/// inside the other side's interval (closed graph).
struct ConditionReport {
    bool s1_pass = true;       // monotone graph: sup S(b) <= inf S(a) for a > b
    bool s2_pass = true;       // endpoints bounded by s_max
    bool c3_pass = true;       // endpoints finite
    bool c1_proxy_pass = true;
    bool c2_proxy_pass = true;
    double s_max_observed = 0.0;
    double worst_s1 = 0.0;
    double worst_s2 = 0.0;
    double worst_c1 = 0.0;
    double worst_c2 = 0.0;
    double worst_location = 0.0;
    std::string note;

    bool all_pass() const {
        return s1_pass && s2_pass && c3_pass && c1_proxy_pass && c2_proxy_pass;
    }
};

ConditionReport check_conditions(const DissipationMap& map,
                                 std::span<const double> sample_grid, double tol);

} // namespace rievolve

#endif
