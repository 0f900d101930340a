/** \file io.hpp
 * \brief Output writers: legacy ASCII VTK snapshots, CSV time series, and the
 *        JSON run manifest. All numbers are printed with 17 significant
 *        digits so binary64 values round-trip exactly.
 */
#ifndef WC2P_IO_HPP
#define WC2P_IO_HPP

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wc2p/cases.hpp"
#include "wc2p/mesh.hpp"
#include "wc2p/model.hpp"
#include "wc2p/stepper.hpp"

namespace wc2p {

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {
inline void append17(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}
} // namespace detail

/// Legacy ASCII VTK unstructured grid with cell-data scalars
/// p u v psi rho kappa, in that order.
inline std::string render_vtk_snapshot(const std::vector<State>& u, const Mesh& mesh,
                                       const Params& params,
                                       const std::vector<double>& kappa_cell) {
    std::string out;
    out += "# vtk DataFile Version 3.0\n";
    out += "wc2p snapshot\n";
    out += "ASCII\n";
    out += "DATASET UNSTRUCTURED_GRID\n";
    out += "POINTS " + std::to_string(mesh.vertices.size()) + " double\n";
    for (const auto& v : mesh.vertices) {
        detail::append17(out, v.x);
        out += ' ';
        detail::append17(out, v.y);
        out += " 0\n";
    }
    std::size_t list_len = 0;
    for (const auto& c : mesh.cells) list_len += c.verts.size() + 1;
    out += "CELLS " + std::to_string(mesh.cells.size()) + ' ' + std::to_string(list_len) + "\n";
    for (const auto& c : mesh.cells) {
        out += std::to_string(c.verts.size());
        for (int v : c.verts) out += ' ' + std::to_string(v);
        out += '\n';
    }
    out += "CELL_TYPES " + std::to_string(mesh.cells.size()) + "\n";
    for (const auto& c : mesh.cells)
        out += c.verts.size() == 3 ? "5\n" : c.verts.size() == 4 ? "9\n" : "7\n";   // 7 = polygon
    out += "CELL_DATA " + std::to_string(mesh.cells.size()) + "\n";

    auto scalars = [&](const char* name, auto&& value) {
        out += std::string("SCALARS ") + name + " double 1\n";
        out += "LOOKUP_TABLE default\n";
        for (std::size_t i = 0; i < u.size(); ++i) {
            detail::append17(out, value(i));
            out += '\n';
        }
    };
    scalars("p", [&](std::size_t i) { return params.beta * u[i].w; });
    scalars("u", [&](std::size_t i) { return u[i].mx / mix_rho(u[i].psi, params); });
    scalars("v", [&](std::size_t i) { return u[i].my / mix_rho(u[i].psi, params); });
    scalars("psi", [&](std::size_t i) { return u[i].psi; });
    scalars("rho", [&](std::size_t i) { return mix_rho(u[i].psi, params); });
    scalars("kappa", [&](std::size_t i) { return i < kappa_cell.size() ? kappa_cell[i] : 0.0; });
    return out;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw IoError("write failed for '" + path + "'");
}

inline void write_vtk_snapshot(const std::vector<State>& u, const Mesh& mesh,
                               const Params& params, const std::vector<double>& kappa_cell,
                               const std::string& path) {
    write_file(path, render_vtk_snapshot(u, mesh, params, kappa_cell));
}

inline std::string render_timeseries(const TimeSeries& s) {
    std::string out = "t,value\n";
    for (std::size_t k = 0; k < s.t.size(); ++k) {
        detail::append17(out, s.t[k]);
        out += ',';
        detail::append17(out, s.v[k]);
        out += '\n';
    }
    return out;
}

inline void write_timeseries(const TimeSeries& s, const std::string& path) {
    write_file(path, render_timeseries(s));
}

inline TimeSeries parse_timeseries(const std::string& text) {
    TimeSeries s;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "t,value")
        throw IoError("time series document lacks the 't,value' header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw IoError("malformed time series row: " + line);
        s.push(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }
    return s;
}

/// Run manifest: everything needed to reproduce the run in serial mode.
inline std::string render_manifest(const std::string& config_text, const Mesh& mesh,
                                   const Diagnostics& diag, long long steps,
                                   double wall_seconds) {
    nlohmann::json j;
    j["format"] = "wc2p-run v1";
    j["config"] = config_text;
    j["mesh"] = {{"cells", mesh.n_cells()}, {"faces", mesh.n_faces()}, {"h_avg", mesh.h_avg}};
    j["diagnostics"] = {{"order1_fallbacks", diag.order1_fallbacks},
                        {"degenerate_contacts", diag.degenerate_contacts},
                        {"min_dt", diag.min_dt}};
    j["steps"] = steps;
    j["wall_seconds"] = wall_seconds;
    return j.dump(2) + "\n";
}

} // namespace wc2p

#endif
