// Finite-difference solvers for the three PDE scenarios: the sticktion heat
// equation, the degenerate-elliptic cubic inclusion, and rate-independent
// level-set mean curvature flow with a radial fast path.
#ifndef RIEVOLVE_PDE_HPP
#define RIEVOLVE_PDE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rievolve/dissipation.hpp"
#include "rievolve/trajectory.hpp"

namespace rievolve {

struct Grid {
    int dim = 2;        // 1 or 2
    std::size_t nx = 3; // node count along x
    std::size_t ny = 1; // node count along y (1 in 1D)
    double dx = 1.0;
    double ox = 0.0; // coordinate of node 0 along x
    double oy = 0.0;

    std::size_t size() const { return nx * ny; }
    std::size_t idx(std::size_t i, std::size_t j) const { return j * nx + i; }
    double x(std::size_t i) const { return ox + dx * static_cast<double>(i); }
    double y(std::size_t j) const { return oy + dx * static_cast<double>(j); }

    /// dim-dimensional grid centered on the square [-half, half]^dim.
    static Grid centered(int dim, std::size_t n, double half);
};

/// Nodal values plus a Dirichlet trace that is reapplied after every step.
struct Field {
    Grid grid;
    std::vector<double> values;
    std::vector<std::uint8_t> dirichlet; // 1 where the trace is pinned
    std::vector<double> trace;

    static Field zeros(const Grid& g);
    /// Field from a nodal function; the outermost layer is pinned to it.
    static Field from_function(const Grid& g,
                               const std::function<double(double, double)>& fn);

    void pin_boundary_to_current();
    void apply_boundary();
    double max_abs() const;
};

enum class ScenarioKind { sticktion_heat, nonconvex_cubed, levelset_mcf, mcf_radial };

std::string scenario_name(ScenarioKind k);
ScenarioKind scenario_by_name(const std::string& name);

struct PDEScenario {
    ScenarioKind kind = ScenarioKind::sticktion_heat;
    DissipationMap dissipation = DissipationMap::sticktion();
    std::function<double(double, double, double)> forcing; // (x, y, t)
    double reg_eps = 1e-3; // selection viscosity for the nodal rate
    double sigma = -1.0;   // gradient regularization; <0 means 1e-6 * dx
    double dt = 0.0;       // <= 0 means the stability bound below

    /// Largest stable step for the scenario on the given grid.
    double stable_dt(const Grid& g) const;
    double effective_sigma(const Grid& g) const;
};

/// Second-order central Laplacian; result is zero on boundary nodes.
Field laplacian(const Field& u);

struct CurvatureTerms {
    Field grad_norm;  // sqrt(|grad u|^2 + sigma^2)
    Field kappa_term; // |grad u| div(grad u / |grad u|), sigma-regularized
};

CurvatureTerms mean_curvature_terms(const Field& u, double sigma);

/// One explicit step: assemble the nodal stationary residual, solve the
/// pointwise regularized inclusion for the rate, advance, reapply Dirichlet
/// data. The omp and serial variants compute identical fields.
Field pde_step(const PDEScenario& sc, const Field& u, double t);
Field pde_step_serial(const PDEScenario& sc, const Field& u, double t);

struct PDESnapshot {
    double t;
    Field field;
};

std::vector<PDESnapshot> run_pde(const PDEScenario& sc, const Field& u0, double T,
                                 std::size_t snapshots);

struct RadialResult {
    Trajectory radius;   // shares the trajectory CSV schema (f column = 0)
    bool collapsed = false;
    double hit_time = -1.0; // time the radius reached the floor
    double r_floor = 1e-3;
};

/// Scalar fast path for a sphere of radius r0 in dimension n: the radius is
/// stationary while (n-1)/r <= 1 and otherwise shrinks at rate
/// ((n-1)/r - 1)/reg_eps until it reaches the floor.
RadialResult radial_mcf_run(int n, double r0, double reg_eps, double dt, double T,
                            double r_floor = 1e-3);

/// Outermost zero crossing of the field along the four axis rays through the
/// given center, averaged; 0 when no crossing remains.
double zero_set_radius(const Field& u, double cx = 0.0, double cy = 0.0);

} // namespace rievolve

#endif
