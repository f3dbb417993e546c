// Discrete checks of the structural results: optimality residuals, stick
// behavior, eps-monotonicity, gap avoidance, scheme ordering, inclusion
// residuals, and barrier bounds. Checks are pure functions of their inputs.
#ifndef RIEVOLVE_VERIFY_HPP
#define RIEVOLVE_VERIFY_HPP

#include <functional>
#include <string>
#include <vector>

#include "rievolve/dissipation.hpp"
#include "rievolve/energy.hpp"
#include "rievolve/loading.hpp"
#include "rievolve/ode.hpp"
#include "rievolve/pde.hpp"
#include "rievolve/trajectory.hpp"

namespace rievolve {

struct CheckReport {
    std::string check;
    bool pass = true;
    double worst = 0.0; // violation magnitude; pass iff worst <= tol
    double where = 0.0; // t (or node coordinate) of the worst violation
    double tol = 0.0;
    std::string note;
};

/// Every step satisfies the stationary inclusion (|f - e(q)| <= 1 when the
/// state did not move) or the jump equality (e(q) = f -/+ 1 for up/down
/// moves beyond tie_tol).
CheckReport check_mm_optimality(const Trajectory& traj, const EnergyLandscape& land,
                                double tol, double tie_tol = 1e-12);

/// q stays at stick_value (within tol) while f <= stick_level. The default
/// parameters are the q0 = 0 statement; segment suites pass the reflected
/// ones.
CheckReport check_stick(const Trajectory& traj, double tol, double stick_value = 0.0,
                        double stick_level = 1.0);

/// Pointwise u_eps <= u_eps' + tol on the common (coarsest) grid for every
/// pair eps >= eps'.
CheckReport check_monotone_in_eps(const std::vector<Trajectory>& per_eps,
                                  const std::vector<double>& eps_values, double tol);

/// Fraction of samples strictly inside a gap component by more than margin
/// must stay below max_violation_fraction.
CheckReport check_gap_avoidance(const Trajectory& traj, const std::vector<OpenInterval>& gaps,
                                double margin, double max_violation_fraction);

/// u_vis <= u_mm + tol pointwise on the coarser of the two grids.
CheckReport check_ordering(const Trajectory& vis, const Trajectory& mm, double tol);

/// At steps below the jump threshold the forward-difference rate satisfies
/// the inclusion f - e(u) (- eps * rate for the viscous scheme) ∈ S(rate)
/// within tol plus an O(h) consistency slack; flagged jumps satisfy the jump
/// equality.
CheckReport check_discrete_inclusion(const Trajectory& traj, const DissipationMap& map,
                                     const EnergyLandscape& land, const GapSet& gaps,
                                     double tol);

/// lower(t) - tol <= u(t) <= upper(t) + tol along a trajectory.
CheckReport check_barriers(const Trajectory& traj, const std::function<double(double)>& lower,
                           const std::function<double(double)>& upper, double tol);

/// Nodewise barrier check over field snapshots; barriers take (x, y, t).
CheckReport check_barriers(const std::vector<PDESnapshot>& snaps,
                           const std::function<double(double, double, double)>& lower,
                           const std::function<double(double, double, double)>& upper,
                           double tol);

/// e(q) matches the direction's monotone envelope along the trajectory:
/// e_m on increasing segments, e^m on decreasing ones.
CheckReport check_envelope_identity(const Trajectory& traj, const EnergyLandscape& land,
                                    const EnvelopeOracle& env, const Loading& loading,
                                    double tol);

/// Per-segment aggregation of the incremental-minimization lemmas using the
/// reflection convention on decreasing segments.
std::vector<CheckReport> suite_mm_lemmas(const Trajectory& traj, const EnergyLandscape& land,
                                         const Loading& loading, double tol);

/// Single-run viscous checks: discrete inclusion plus per-increasing-segment
/// upper-gap avoidance.
std::vector<CheckReport> suite_vv_lemmas(const Trajectory& traj, const EnergyLandscape& land,
                                         const Loading& loading, double margin,
                                         double max_violation_fraction);

bool all_pass(const std::vector<CheckReport>& reports);

} // namespace rievolve

#endif
