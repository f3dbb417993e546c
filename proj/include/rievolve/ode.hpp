// The two constructive schemes for dR(u_t) + e(u) ∋ f: implicit-Euler
// vanishing viscosity and incremental minimization (maximal minimizing
// movements), plus jump prediction and hysteresis-loop generation.
#ifndef RIEVOLVE_ODE_HPP
#define RIEVOLVE_ODE_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rievolve/energy.hpp"
#include "rievolve/loading.hpp"
#include "rievolve/trajectory.hpp"

namespace rievolve {

struct VVParams {
    double eps = 1e-3;
    double h = 0.0; // 0: choose eps / (2 * lipschitz_on_bracket)
    double root_tol = 1e-10;
    std::vector<double> eps_sequence = {1e-1, 1e-2, 1e-3};
    bool parallel = true; // eps sweep only; a single run is sequential

    /// Step satisfying the uniqueness guard h <= eps / (2 L).
    static double guarded_h(const EnergyLandscape& land, double eps);
};

struct MMParams {
    std::size_t steps = 16000;      // uniform partition of [t0, T]
    std::vector<double> partition;  // explicit grid; overrides steps if set
    std::size_t scan_points = 20001;
    double tie_tol_rel = 1e-9;  // relative tie window for duplicate minimizers
    double snap_tol_rel = 1e-10; // snap distance to q_prev for exact sticking
    bool parallel = true;
};

/// One implicit-Euler step of eps u_t + dR(u_t) + e(u) ∋ f:
/// returns u_prev + delta where (eps/h) delta + dR(delta) + e(u_prev+delta) ∋ f_val.
/// Throws GuardViolated when h exceeds eps / (2 L_local).
double viscous_step(const EnergyLandscape& land, double f_val, double u_prev, double eps,
                    double h, double root_tol = 1e-10);

Trajectory run_viscous(const EnergyLandscape& land, const Loading& loading,
                       const VVParams& params, double u0);

struct VVLimitResult {
    Trajectory limit;                // pointwise sup over the eps runs, coarse grid
    std::vector<Trajectory> per_eps; // one per eps, own (nested) grid
    std::vector<double> eps_values;
};

/// Runs every eps in params.eps_sequence on nested step grids and takes the
/// pointwise maximum on the coarsest grid.
VVLimitResult vanishing_viscosity_limit(const EnergyLandscape& land, const Loading& loading,
                                        const VVParams& params, double u0);

/// Precomputed scan grid for the incremental minimization.
struct MMScanWorkspace {
    std::vector<double> q;
    std::vector<double> energy; // E at q
    std::vector<double> phi;    // per-step scratch
};

MMScanWorkspace build_mm_workspace(const EnergyLandscape& land, std::size_t scan_points);

namespace kernels {
/// phi[i] = E[i] - f * q[i] + |q[i] - q_prev|. The two variants compute
/// identical values; the serial one is the reference for tests.
void mm_objective_fill_serial(std::span<const double> q, std::span<const double> energy,
                              double f, double q_prev, std::span<double> phi);
void mm_objective_fill_omp(std::span<const double> q, std::span<const double> energy,
                           double f, double q_prev, std::span<double> phi);
} // namespace kernels

/// One incremental-minimization step. Enumerates the local minimizers of
/// Phi(q) = E(q) - f_val q + |q - q_prev| (uniform scan + golden refinement
/// + stationarity polish) and picks the one extremal in the loading
/// direction: largest for direction >= 0, smallest for direction < 0.
/// Throws BracketTooSmall when Phi at a bracket end undercuts Phi(q_prev).
double mm_step(const EnergyLandscape& land, double f_val, double q_prev,
               const MMParams& params, int direction = +1);
double mm_step(const EnergyLandscape& land, double f_val, double q_prev,
               const MMParams& params, int direction, MMScanWorkspace& ws);

Trajectory run_minimizing_movements(const EnergyLandscape& land, const Loading& loading,
                                    const MMParams& params, double q0);

struct JumpPrediction {
    double t_pred;
    double f_level;
    Scheme scheme;  // vv or mm
    int direction;  // +1 up, -1 down
    std::string note;
};

/// Critical-value jump levels per monotone loading segment: on increasing
/// segments vis jumps at e(local max)+1 and mm at e(local min)+1; on
/// decreasing segments the roles mirror (e(local min)-1 / e(local max)-1).
std::vector<JumpPrediction> predict_jumps(const EnergyLandscape& land, const Loading& loading);

struct RealizedJump {
    Scheme scheme;
    double t_mid;   // time the trajectory crosses the gap midpoint
    double f_level; // loading value at t_mid
    int direction;
    char gap_kind; // 'u' upper, 'l' lower
    double u_from;
    double u_to;
};

/// Full traversals of the gap components by the trajectory.
std::vector<RealizedJump> extract_gap_crossings(const Trajectory& traj, const GapSet& gaps);

struct HysteresisReport {
    Trajectory vis;
    Trajectory mm;
    GapSet gaps;
    std::vector<JumpPrediction> predicted;
    std::vector<RealizedJump> realized;
    std::vector<std::string> warnings;
    std::size_t envelope_resolution = 100000;
};

HysteresisReport run_hysteresis(const EnergyLandscape& land, const Loading& loading,
                                const VVParams& vv, const MMParams& mm);

} // namespace rievolve

#endif
