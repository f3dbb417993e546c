#include "rievolve/config.hpp"

#include <fstream>
#include <sstream>

#include "rievolve/errors.hpp"

namespace rievolve {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

FlatConfig FlatConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

FlatConfig FlatConfig::parse_text(const std::string& text) {
    FlatConfig cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + " has no '='");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) + " has an empty key");
        cfg.kv_[key] = value;
    }
    return cfg;
}

std::string FlatConfig::dump() const {
    std::string out;
    for (const auto& [k, v] : kv_) out += k + " = " + v + "\n";
    return out;
}

std::string FlatConfig::get(const std::string& key, const std::string& fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

double FlatConfig::get_double(const std::string& key, double fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' is not a number: " + it->second);
    }
}

std::size_t FlatConfig::get_size(const std::string& key, std::size_t fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    try {
        long long v = std::stoll(it->second);
        if (v < 0) throw ConfigError("config key '" + key + "' must be non-negative");
        return static_cast<std::size_t>(v);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' is not an integer: " + it->second);
    }
}

std::vector<double> FlatConfig::get_doubles(const std::string& key,
                                            const std::vector<double>& fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    return parse_double_list(it->second);
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        std::string t = cell;
        if (t.find_first_not_of(" \t") == std::string::npos) continue;
        try {
            out.push_back(std::stod(t));
        } catch (const std::exception&) {
            throw ConfigError("not a number in list: " + cell);
        }
    }
    return out;
}

EnergyLandscape energy_by_spec(const std::string& spec, double x_lo, double x_hi) {
    if (spec == "cubic_paper") {
        EnergyLandscape l = EnergyLandscape::cubic_paper();
        if (x_lo < x_hi) return EnergyLandscape::polynomial(l.coefficients(), x_lo, x_hi,
                                                            "cubic_paper");
        return l;
    }
    if (spec == "linear") {
        double a = x_lo < x_hi ? x_lo : -1.0;
        double b = x_lo < x_hi ? x_hi : 6.0;
        return EnergyLandscape::polynomial({0.0, 1.0}, a, b, "linear");
    }
    if (spec.rfind("poly:", 0) == 0) {
        std::vector<double> coeffs = parse_double_list(spec.substr(5));
        double a = x_lo < x_hi ? x_lo : -2.0;
        double b = x_lo < x_hi ? x_hi : 4.0;
        return EnergyLandscape::polynomial(std::move(coeffs), a, b, "poly");
    }
    if (spec.rfind("table:", 0) == 0) {
        std::vector<double> xs, ys;
        std::stringstream ss(spec.substr(6));
        std::string pair;
        while (std::getline(ss, pair, ',')) {
            std::size_t colon = pair.find(':');
            if (colon == std::string::npos)
                throw ConfigError("table energy entries are x:y pairs: " + pair);
            xs.push_back(std::stod(pair.substr(0, colon)));
            ys.push_back(std::stod(pair.substr(colon + 1)));
        }
        return EnergyLandscape::from_table(std::move(xs), std::move(ys));
    }
    throw ConfigError("unknown energy spec: " + spec);
}

DissipationMap dissipation_by_spec(const std::string& spec) {
    if (spec.rfind("table:", 0) == 0) {
        std::string body = spec.substr(6);
        bool monotone = false;
        std::size_t semi = body.find(';');
        if (semi != std::string::npos) {
            monotone = body.substr(semi + 1) == "monotone";
            body = body.substr(0, semi);
        }
        std::vector<DissipationMap::Breakpoint> rows;
        std::stringstream ss(body);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            std::size_t c1 = cell.find(':');
            std::size_t c2 = cell.find(':', c1 + 1);
            if (c1 == std::string::npos || c2 == std::string::npos)
                throw ConfigError("dissipation table entries are a:lo:hi triples: " + cell);
            rows.push_back({std::stod(cell.substr(0, c1)),
                            std::stod(cell.substr(c1 + 1, c2 - c1 - 1)),
                            std::stod(cell.substr(c2 + 1))});
        }
        return DissipationMap::from_table("user_table", std::move(rows), monotone);
    }
    return DissipationMap::by_name(spec);
}

Loading loading_by_spec(const std::string& spec) {
    if (spec == "paper_f") return Loading::paper_f();
    if (spec.rfind("ramp:", 0) == 0) {
        std::vector<double> v = parse_double_list(spec.substr(5));
        // accept "ramp:slope:T" and "ramp:slope,T"
        if (v.size() != 2) {
            std::string rest = spec.substr(5);
            std::size_t colon = rest.find(':');
            if (colon == std::string::npos) throw ConfigError("ramp needs slope and T: " + spec);
            v = {std::stod(rest.substr(0, colon)), std::stod(rest.substr(colon + 1))};
        }
        return Loading::ramp(v[0], v[1]);
    }
    if (spec.rfind("points:", 0) == 0) {
        std::vector<std::pair<double, double>> bp;
        std::stringstream ss(spec.substr(7));
        std::string pair;
        while (std::getline(ss, pair, ',')) {
            std::size_t colon = pair.find(':');
            if (colon == std::string::npos)
                throw ConfigError("loading points are t:f pairs: " + pair);
            bp.emplace_back(std::stod(pair.substr(0, colon)), std::stod(pair.substr(colon + 1)));
        }
        return Loading(std::move(bp));
    }
    throw ConfigError("unknown loading spec: " + spec);
}

} // namespace rievolve
