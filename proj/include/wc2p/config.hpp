/** \file config.hpp
 * \brief Flat key = value configuration documents with [section] headers.
 *
 * Sections: [case], [params], [mesh], [output]. Unknown sections or keys are
 * rejected; parse errors carry the offending key or line. render() emits a
 * document that parses back to an equal configuration.
 */
#ifndef WC2P_CONFIG_HPP
#define WC2P_CONFIG_HPP

#include <cctype>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "wc2p/cases.hpp"

namespace wc2p {

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

inline double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
    }
}

inline long long parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long long i = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
    }
}

inline bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "on" || v == "1") return true;
    if (v == "false" || v == "off" || v == "0") return false;
    throw ConfigError("key '" + key + "': expected a boolean, got '" + v + "'");
}

inline std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    return out;
}

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

inline CaseConfig parse_config(const std::string& text) {
    CaseConfig c;
    bool kind_set = false;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
            section = line.substr(1, line.size() - 2);
            if (section != "case" && section != "params" && section != "mesh" &&
                section != "output")
                throw ConfigError("unknown section '" + section + "'");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string val = detail::trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");

        if (section == "case") {
            if (key == "kind") {
                if (val == "static_drop") c.kind = CaseKind::static_drop;
                else if (val == "linear_sloshing") c.kind = CaseKind::linear_sloshing;
                else if (val == "capillary_wave") c.kind = CaseKind::capillary_wave;
                else if (val == "rayleigh_taylor") c.kind = CaseKind::rayleigh_taylor;
                else if (val == "custom") c.kind = CaseKind::custom;
                else throw ConfigError("key 'kind': unknown case '" + val + "'");
                kind_set = true;
            } else if (key == "length") c.length = detail::parse_double(key, val);
            else if (key == "height") c.height = detail::parse_double(key, val);
            else if (key == "fill_height") c.fill_height = detail::parse_double(key, val);
            else if (key == "radius") c.radius = detail::parse_double(key, val);
            else if (key == "amplitude0") c.amplitude0 = detail::parse_double(key, val);
            else if (key == "wavenumber") c.wavenumber = detail::parse_double(key, val);
            else if (key == "phi_s") c.phi_s = detail::parse_double(key, val);
            else if (key == "t_end") c.t_end = detail::parse_double(key, val);
            else if (key == "order") c.order = static_cast<int>(detail::parse_int(key, val));
            else if (key == "surface_tension") {
                if (val == "path_conservative") c.st_mode = SurfaceTensionMode::path_conservative;
                else if (val == "csf_source") c.st_mode = SurfaceTensionMode::csf_source;
                else throw ConfigError("key 'surface_tension': unknown mode '" + val + "'");
            } else if (key == "kappa_override") c.kappa_override = detail::parse_double(key, val);
            else if (key == "pressure_init") {
                if (val == "zero") c.pressure_init = PressureInit::zero;
                else if (val == "hydrostatic") c.pressure_init = PressureInit::hydrostatic;
                else if (val == "exact_drop") c.pressure_init = PressureInit::exact_drop;
                else throw ConfigError("key 'pressure_init': unknown value '" + val + "'");
            } else if (key == "regularization") c.regularization = detail::parse_bool(key, val);
            else throw ConfigError("unknown key '" + key + "' in [case]");
        } else if (section == "params") {
            if (key == "beta") c.params.beta = detail::parse_double(key, val);
            else if (key == "sigma") c.params.sigma = detail::parse_double(key, val);
            else if (key == "gravity_x") c.params.gravity.x = detail::parse_double(key, val);
            else if (key == "gravity_y") c.params.gravity.y = detail::parse_double(key, val);
            else if (key == "rho1") c.params.rho1 = detail::parse_double(key, val);
            else if (key == "rho2") c.params.rho2 = detail::parse_double(key, val);
            else if (key == "mu1") c.params.mu1 = detail::parse_double(key, val);
            else if (key == "mu2") c.params.mu2 = detail::parse_double(key, val);
            else if (key == "d") c.params.d = detail::parse_double(key, val);
            else if (key == "delta") c.params.delta = detail::parse_double(key, val);
            else if (key == "cfl") c.params.cfl = detail::parse_double(key, val);
            else throw ConfigError("unknown key '" + key + "' in [params]");
        } else if (section == "mesh") {
            if (key == "kind") c.mesh.kind = val;
            else if (key == "nx") c.mesh.nx = static_cast<int>(detail::parse_int(key, val));
            else if (key == "ny") c.mesh.ny = static_cast<int>(detail::parse_int(key, val));
            else if (key == "jitter") c.mesh.jitter = detail::parse_double(key, val);
            else if (key == "seed") c.mesh.seed = static_cast<std::uint64_t>(detail::parse_int(key, val));
            else if (key == "h_fine") c.mesh.h_fine = detail::parse_double(key, val);
            else if (key == "h_coarse") c.mesh.h_coarse = detail::parse_double(key, val);
            else if (key == "band") c.mesh.band = detail::parse_double(key, val);
            else if (key == "path") c.mesh.path = val;
            else throw ConfigError("unknown key '" + key + "' in [mesh]");
        } else if (section == "output") {
            if (key == "probe_x") c.probe_x = detail::parse_list(key, val);
            else if (key == "probe_dt") c.probe_dt = detail::parse_double(key, val);
            else throw ConfigError("unknown key '" + key + "' in [output]");
        } else {
            throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
        }
    }
    if (!kind_set) throw ConfigError("missing required key 'kind' in [case]");
    finalize_config(c);
    c.validate();
    return c;
}

inline std::string render_config(const CaseConfig& c) {
    using detail::fmt17;
    std::string out;
    out += "[case]\n";
    out += std::string("kind = ") + to_string(c.kind) + "\n";
    out += "length = " + fmt17(c.length) + "\n";
    if (c.height != 0.0) out += "height = " + fmt17(c.height) + "\n";
    if (c.fill_height != 0.0) out += "fill_height = " + fmt17(c.fill_height) + "\n";
    if (c.radius != 0.0) out += "radius = " + fmt17(c.radius) + "\n";
    if (c.amplitude0 != 0.0) out += "amplitude0 = " + fmt17(c.amplitude0) + "\n";
    if (c.wavenumber != 0.0) out += "wavenumber = " + fmt17(c.wavenumber) + "\n";
    if (c.phi_s) out += "phi_s = " + fmt17(*c.phi_s) + "\n";
    out += "t_end = " + fmt17(c.t_end) + "\n";
    out += "order = " + std::to_string(c.order) + "\n";
    out += std::string("surface_tension = ") +
           (c.st_mode == SurfaceTensionMode::csf_source ? "csf_source" : "path_conservative") +
           "\n";
    if (c.kappa_override) out += "kappa_override = " + fmt17(*c.kappa_override) + "\n";
    out += std::string("pressure_init = ") +
           (c.pressure_init == PressureInit::zero
                ? "zero"
                : c.pressure_init == PressureInit::hydrostatic ? "hydrostatic" : "exact_drop") +
           "\n";
    out += std::string("regularization = ") + (c.regularization ? "true" : "false") + "\n";
    out += "\n[params]\n";
    out += "beta = " + fmt17(c.params.beta) + "\n";
    out += "sigma = " + fmt17(c.params.sigma) + "\n";
    out += "gravity_x = " + fmt17(c.params.gravity.x) + "\n";
    out += "gravity_y = " + fmt17(c.params.gravity.y) + "\n";
    out += "rho1 = " + fmt17(c.params.rho1) + "\n";
    out += "rho2 = " + fmt17(c.params.rho2) + "\n";
    out += "mu1 = " + fmt17(c.params.mu1) + "\n";
    out += "mu2 = " + fmt17(c.params.mu2) + "\n";
    out += "d = " + fmt17(c.params.d) + "\n";
    out += "delta = " + fmt17(c.params.delta) + "\n";
    out += "cfl = " + fmt17(c.params.cfl) + "\n";
    out += "\n[mesh]\n";
    out += "kind = " + c.mesh.kind + "\n";
    if (c.mesh.nx) out += "nx = " + std::to_string(c.mesh.nx) + "\n";
    if (c.mesh.ny) out += "ny = " + std::to_string(c.mesh.ny) + "\n";
    if (c.mesh.jitter != 0.0) out += "jitter = " + fmt17(c.mesh.jitter) + "\n";
    if (c.mesh.seed != 7) out += "seed = " + std::to_string(c.mesh.seed) + "\n";
    if (c.mesh.h_fine != 0.0) out += "h_fine = " + fmt17(c.mesh.h_fine) + "\n";
    if (c.mesh.h_coarse != 0.0) out += "h_coarse = " + fmt17(c.mesh.h_coarse) + "\n";
    if (c.mesh.band != 0.0) out += "band = " + fmt17(c.mesh.band) + "\n";
    if (!c.mesh.path.empty()) out += "path = " + c.mesh.path + "\n";
    out += "\n[output]\n";
    if (!c.probe_x.empty()) {
        out += "probe_x = ";
        for (std::size_t k = 0; k < c.probe_x.size(); ++k)
            out += (k ? ", " : "") + fmt17(c.probe_x[k]);
        out += "\n";
    }
    if (c.probe_dt != 0.0) out += "probe_dt = " + fmt17(c.probe_dt) + "\n";
    return out;
}

} // namespace wc2p

#endif
