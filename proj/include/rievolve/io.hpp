// CSV, SVG, and JSON emission; CSV columns are the stable contract.
#ifndef RIEVOLVE_IO_HPP
#define RIEVOLVE_IO_HPP

#include <string>
#include <vector>

#include "rievolve/energy.hpp"
#include "rievolve/ode.hpp"
#include "rievolve/pde.hpp"
#include "rievolve/trajectory.hpp"
#include "rievolve/verify.hpp"

namespace rievolve {

/// Shortest round-trip formatting (%.17g); identical input gives identical
/// bytes, which is what the reproducibility contract rests on.
std::string format_double(double v);

/// Columns: t,f,u,scheme,eps (eps blank for mm rows).
void write_trajectory_csv(const std::string& path, const Trajectory& traj);
Trajectory read_trajectory_csv(const std::string& path);

/// Columns: x,e,e_m,e_upper_m.
void write_envelope_csv(const std::string& path, const EnergyLandscape& land,
                        const Envelopes& env);

/// Columns: x,y,u (y = 0 for 1D fields).
void write_field_csv(const std::string& path, const Field& field);

void write_report_json(const std::string& path, const std::vector<CheckReport>& reports);

/// Generic two-column table.
void write_xy_csv(const std::string& path, const std::string& xname, const std::string& yname,
                  const std::vector<double>& xs, const std::vector<double>& ys);

/// Unstyled polyline plot with axis labels.
void write_svg_polyline(const std::string& path, const std::vector<double>& xs,
                        const std::vector<double>& ys, const std::string& xlabel,
                        const std::string& ylabel);

struct HysteresisFiles {
    std::string energy_csv;
    std::string loading_csv;
    std::string vis_loop_csv;
    std::string mm_loop_csv;
    std::vector<std::string> svgs;
};

/// The four figure tables (energy graph, loading graph, two loops) plus the
/// matching SVG plots when `with_svg` is set. Loop tables carry t,f,u and are
/// stride-decimated to at most `max_rows` rows.
HysteresisFiles write_hysteresis_outputs(const std::string& dir, const HysteresisReport& rep,
                                         const EnergyLandscape& land, bool with_svg,
                                         std::size_t max_rows = 20001);

} // namespace rievolve

#endif
