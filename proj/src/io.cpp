#include "rievolve/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rievolve/errors.hpp"

namespace rievolve {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path);
    return out;
}

} // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    std::ofstream out = open_out(path);
    out << "t,f,u,scheme,eps\n";
    std::string scheme = scheme_name(traj.scheme);
    std::string eps = traj.scheme == Scheme::mm ? "" : format_double(traj.eps);
    for (std::size_t k = 0; k < traj.size(); ++k)
        out << format_double(traj.times[k]) << ',' << format_double(traj.f_values[k]) << ','
            << format_double(traj.values[k]) << ',' << scheme << ',' << eps << '\n';
}

Trajectory read_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open trajectory file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty trajectory file: " + path);
    Trajectory traj;
    bool scheme_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() < 4) throw ConfigError("malformed trajectory row: " + line);
        traj.times.push_back(std::stod(cells[0]));
        traj.f_values.push_back(std::stod(cells[1]));
        traj.values.push_back(std::stod(cells[2]));
        if (!scheme_seen) {
            traj.scheme = scheme_by_name(cells[3]);
            traj.eps = cells.size() > 4 && !cells[4].empty() ? std::stod(cells[4]) : 0.0;
            scheme_seen = true;
        }
    }
    if (traj.size() >= 2) traj.step = traj.times[1] - traj.times[0];
    return traj;
}

void write_envelope_csv(const std::string& path, const EnergyLandscape& land,
                        const Envelopes& env) {
    std::ofstream out = open_out(path);
    out << "x,e,e_m,e_upper_m\n";
    for (std::size_t i = 0; i < env.lower.size(); ++i) {
        double x = env.lower.x_at(i);
        out << format_double(x) << ',' << format_double(land.e(x)) << ','
            << format_double(env.lower.values[i]) << ',' << format_double(env.upper.values[i])
            << '\n';
    }
}

void write_field_csv(const std::string& path, const Field& field) {
    std::ofstream out = open_out(path);
    out << "x,y,u\n";
    const Grid& g = field.grid;
    for (std::size_t j = 0; j < g.ny; ++j)
        for (std::size_t i = 0; i < g.nx; ++i)
            out << format_double(g.x(i)) << ',' << format_double(g.dim == 2 ? g.y(j) : 0.0)
                << ',' << format_double(field.values[g.idx(i, j)]) << '\n';
}

void write_report_json(const std::string& path, const std::vector<CheckReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json rec{{"check", r.check}, {"pass", r.pass},     {"worst", r.worst},
                           {"where", r.where}, {"tol", r.tol}};
        if (!r.note.empty()) rec["note"] = r.note;
        arr.push_back(rec);
    }
    std::ofstream out = open_out(path);
    out << arr.dump(2) << '\n';
}

void write_xy_csv(const std::string& path, const std::string& xname, const std::string& yname,
                  const std::vector<double>& xs, const std::vector<double>& ys) {
    std::ofstream out = open_out(path);
    out << xname << ',' << yname << '\n';
    for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i)
        out << format_double(xs[i]) << ',' << format_double(ys[i]) << '\n';
}

void write_svg_polyline(const std::string& path, const std::vector<double>& xs,
                        const std::vector<double>& ys, const std::string& xlabel,
                        const std::string& ylabel) {
    const double W = 640, H = 480, m = 56;
    double x_lo = xs.empty() ? 0 : *std::min_element(xs.begin(), xs.end());
    double x_hi = xs.empty() ? 1 : *std::max_element(xs.begin(), xs.end());
    double y_lo = ys.empty() ? 0 : *std::min_element(ys.begin(), ys.end());
    double y_hi = ys.empty() ? 1 : *std::max_element(ys.begin(), ys.end());
    if (x_hi <= x_lo) x_hi = x_lo + 1;
    if (y_hi <= y_lo) y_hi = y_lo + 1;
    auto px = [&](double x) { return m + (x - x_lo) / (x_hi - x_lo) * (W - 2 * m); };
    auto py = [&](double y) { return H - m - (y - y_lo) / (y_hi - y_lo) * (H - 2 * m); };

    std::ofstream out = open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\">\n";
    out << "<line x1=\"" << m << "\" y1=\"" << H - m << "\" x2=\"" << W - m << "\" y2=\""
        << H - m << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << m << "\" y1=\"" << m << "\" x2=\"" << m << "\" y2=\"" << H - m
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">" << xlabel
        << "</text>\n";
    out << "<text x=\"16\" y=\"" << H / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << H / 2 << ")\">" << ylabel << "</text>\n";
    out << "<polyline fill=\"none\" stroke=\"black\" points=\"";
    for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
        if (i) out << ' ';
        out << px(xs[i]) << ',' << py(ys[i]);
    }
    out << "\"/>\n</svg>\n";
}

namespace {

void write_loop_csv(const std::string& path, const Trajectory& traj, std::size_t max_rows) {
    std::ofstream out = open_out(path);
    out << "t,f,u\n";
    std::size_t stride = std::max<std::size_t>(1, (traj.size() + max_rows - 1) / max_rows);
    for (std::size_t k = 0; k < traj.size(); k += stride)
        out << format_double(traj.times[k]) << ',' << format_double(traj.f_values[k]) << ','
            << format_double(traj.values[k]) << '\n';
    // keep the final sample so the loop closes
    if ((traj.size() - 1) % stride != 0 && traj.size() > 0) {
        std::size_t k = traj.size() - 1;
        out << format_double(traj.times[k]) << ',' << format_double(traj.f_values[k]) << ','
            << format_double(traj.values[k]) << '\n';
    }
}

std::vector<double> decimate(const std::vector<double>& v, std::size_t max_rows) {
    std::size_t stride = std::max<std::size_t>(1, (v.size() + max_rows - 1) / max_rows);
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); i += stride) out.push_back(v[i]);
    if (!v.empty() && (v.size() - 1) % stride != 0) out.push_back(v.back());
    return out;
}

} // namespace

HysteresisFiles write_hysteresis_outputs(const std::string& dir, const HysteresisReport& rep,
                                         const EnergyLandscape& land, bool with_svg,
                                         std::size_t max_rows) {
    std::filesystem::create_directories(dir);
    HysteresisFiles files;
    auto in_dir = [&](const std::string& name) {
        return (std::filesystem::path(dir) / name).string();
    };

    const std::size_t n = 2001;
    std::vector<double> ex(n), ev(n);
    for (std::size_t i = 0; i < n; ++i) {
        ex[i] = land.x_lo() + (land.x_hi() - land.x_lo()) * static_cast<double>(i) /
                                  static_cast<double>(n - 1);
        ev[i] = land.e(ex[i]);
    }
    files.energy_csv = in_dir("fig1_energy.csv");
    write_xy_csv(files.energy_csv, "x", "e", ex, ev);

    files.loading_csv = in_dir("fig1_loading.csv");
    write_xy_csv(files.loading_csv, "t", "f", decimate(rep.vis.times, n),
                 decimate(rep.vis.f_values, n));

    files.vis_loop_csv = in_dir("fig1_vis_loop.csv");
    write_loop_csv(files.vis_loop_csv, rep.vis, max_rows);
    files.mm_loop_csv = in_dir("fig1_mm_loop.csv");
    write_loop_csv(files.mm_loop_csv, rep.mm, max_rows);

    if (with_svg) {
        std::string p1 = in_dir("fig1_energy.svg");
        write_svg_polyline(p1, ex, ev, "x", "e(x)");
        std::string p2 = in_dir("fig1_loading.svg");
        write_svg_polyline(p2, decimate(rep.vis.times, n), decimate(rep.vis.f_values, n), "t",
                           "f(t)");
        std::string p3 = in_dir("fig1_vis_loop.svg");
        write_svg_polyline(p3, decimate(rep.vis.f_values, max_rows),
                           decimate(rep.vis.values, max_rows), "f", "u_vis");
        std::string p4 = in_dir("fig1_mm_loop.svg");
        write_svg_polyline(p4, decimate(rep.mm.f_values, max_rows),
                           decimate(rep.mm.values, max_rows), "f", "u_mm");
        files.svgs = {p1, p2, p3, p4};
    }
    return files;
}

} // namespace rievolve
