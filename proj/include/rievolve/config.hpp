// Flat key=value run configuration; CLI flags override file values.
#ifndef RIEVOLVE_CONFIG_HPP
#define RIEVOLVE_CONFIG_HPP

#include <map>
#include <string>
#include <vector>

#include "rievolve/dissipation.hpp"
#include "rievolve/energy.hpp"
#include "rievolve/loading.hpp"

namespace rievolve {

/// Flat string map with typed accessors. Lines are `key = value`; blank
/// lines and #-comments are ignored. dump() emits sorted keys and reparses
/// to an equal map.
class FlatConfig {
public:
    static FlatConfig parse_file(const std::string& path);
    static FlatConfig parse_text(const std::string& text);

    std::string dump() const;

    bool has(const std::string& key) const { return kv_.count(key) > 0; }
    void set(const std::string& key, const std::string& value) { kv_[key] = value; }

    std::string get(const std::string& key, const std::string& fallback = "") const;
    double get_double(const std::string& key, double fallback) const;
    std::size_t get_size(const std::string& key, std::size_t fallback) const;
    std::vector<double> get_doubles(const std::string& key,
                                    const std::vector<double>& fallback) const;

    bool operator==(const FlatConfig& other) const { return kv_ == other.kv_; }
    const std::map<std::string, std::string>& entries() const { return kv_; }

private:
    std::map<std::string, std::string> kv_;
};

/// Resolve the energy spec: `cubic_paper`, `linear`, `poly:c0,c1,...`, or
/// `table:x0:y0,x1:y1,...`; optional bracket override.
EnergyLandscape energy_by_spec(const std::string& spec, double x_lo, double x_hi);

/// Resolve the loading spec: `paper_f`, `ramp:slope:T`, or
/// `points:t0:f0,t1:f1,...`.
Loading loading_by_spec(const std::string& spec);

/// Resolve the dissipation spec: `sign_subdifferential`, `sticktion`, or a
/// breakpoint table `table:a:lo:hi,...` (append `;monotone` when the graph
/// is increasing).
DissipationMap dissipation_by_spec(const std::string& spec);

std::vector<double> parse_double_list(const std::string& text);

} // namespace rievolve

#endif
