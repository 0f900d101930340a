/** \file meshgen.hpp
 * \brief Generators for triangular test meshes, emitted as native ASCII mesh
 *        documents so the import path is exercised end to end.
 */
#ifndef WC2P_MESHGEN_HPP
#define WC2P_MESHGEN_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "wc2p/geometry.hpp"

namespace wc2p {

struct SideNames {
    std::string left = "slip_wall";
    std::string right = "slip_wall";
    std::string bottom = "slip_wall";
    std::string top = "slip_wall";
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Uniform in [-1,1], deterministic in (seed, i, j, comp).
inline double hash_unit(std::uint64_t seed, std::uint64_t i, std::uint64_t j, std::uint64_t comp) {
    const std::uint64_t h = splitmix64(seed ^ splitmix64(i ^ splitmix64(j ^ (comp * 0x2545f4914f6cdd1dULL))));
    return 2.0 * (static_cast<double>(h >> 11) * 0x1.0p-53) - 1.0;
}

inline void append_num(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

struct RawMesh {
    std::vector<Vec2> verts;
    std::vector<std::vector<int>> cells;
    struct Group {
        std::string name;
        std::vector<std::pair<int, int>> edges;
    };
    std::vector<Group> groups;

    std::string to_doc() const {
        std::string out = "wc2p-mesh v1\n";
        out += "vertices " + std::to_string(verts.size()) + "\n";
        for (const auto& v : verts) {
            append_num(out, v.x);
            out += ' ';
            append_num(out, v.y);
            out += '\n';
        }
        out += "cells " + std::to_string(cells.size()) + "\n";
        for (const auto& c : cells) {
            out += std::to_string(c.size());
            for (int id : c) out += ' ' + std::to_string(id);
            out += '\n';
        }
        out += "boundary " + std::to_string(groups.size()) + "\n";
        for (const auto& g : groups) {
            out += "tag " + g.name + ' ' + std::to_string(g.edges.size()) + '\n';
            for (auto [a, b] : g.edges)
                out += std::to_string(a) + ' ' + std::to_string(b) + '\n';
        }
        return out;
    }
};

} // namespace detail

/// Structured triangulation of an nx-by-ny grid with alternating diagonals.
/// Interior vertices can be jittered (fraction of the local spacing) to break
/// the lattice structure; the result stays a valid conforming mesh.
inline std::string triangular_mesh_doc(int nx, int ny, double lx, double ly,
                                       Vec2 origin = {0.0, 0.0},
                                       SideNames sides = {},
                                       double jitter = 0.0,
                                       std::uint64_t seed = 7) {
    const double dx = lx / nx, dy = ly / ny;
    detail::RawMesh rm;
    auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };
    for (int j = 0; j <= ny; ++j) {
        for (int i = 0; i <= nx; ++i) {
            Vec2 p{origin.x + i * dx, origin.y + j * dy};
            if (jitter > 0.0 && i > 0 && i < nx && j > 0 && j < ny) {
                p.x += jitter * dx * detail::hash_unit(seed, i, j, 0);
                p.y += jitter * dy * detail::hash_unit(seed, i, j, 1);
            }
            rm.verts.push_back(p);
        }
    }
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
            if ((i + j) % 2 == 0) {
                rm.cells.push_back({a, b, c});
                rm.cells.push_back({a, c, d});
            } else {
                rm.cells.push_back({a, b, d});
                rm.cells.push_back({b, c, d});
            }
        }
    }
    detail::RawMesh::Group gl{sides.left, {}}, gr{sides.right, {}}, gb{sides.bottom, {}}, gt{sides.top, {}};
    for (int j = 0; j < ny; ++j) {
        gl.edges.emplace_back(vid(0, j), vid(0, j + 1));
        gr.edges.emplace_back(vid(nx, j), vid(nx, j + 1));
    }
    for (int i = 0; i < nx; ++i) {
        gb.edges.emplace_back(vid(i, 0), vid(i + 1, 0));
        gt.edges.emplace_back(vid(i, ny), vid(i + 1, ny));
    }
    rm.groups = {gl, gr, gb, gt};
    return rm.to_doc();
}

/// Triangulation graded towards a horizontal line y = y_focus: rows are spaced
/// and populated according to the local target size, with triangle strips
/// stitched between rows of different point counts.
inline std::string graded_triangular_mesh_doc(double lx, double ly, double y_focus,
                                              double h_fine, double h_coarse,
                                              double band,
                                              SideNames sides = {}) {
    auto target = [&](double y) {
        const double t = std::min(1.0, std::abs(y - y_focus) / band);
        return h_fine + (h_coarse - h_fine) * t;
    };

    // row positions: march with local spacing, then rescale to land on ly
    std::vector<double> ys{0.0};
    while (ys.back() < ly - 1e-12) {
        const double h = target(ys.back() + 0.5 * target(ys.back()));
        ys.push_back(std::min(ly, ys.back() + h));
    }
    if (ys.size() < 3) ys = {0.0, 0.5 * ly, ly};
    const double scale = ly / ys.back();
    for (auto& y : ys) y *= scale;

    detail::RawMesh rm;
    std::vector<std::vector<int>> rows;
    for (double y : ys) {
        const int n = std::max(2, static_cast<int>(std::lround(lx / target(y))) + 1);
        std::vector<int> row;
        for (int i = 0; i < n; ++i) {
            row.push_back(static_cast<int>(rm.verts.size()));
            rm.verts.push_back({lx * i / (n - 1), y});
        }
        rows.push_back(std::move(row));
    }

    for (std::size_t r = 0; r + 1 < rows.size(); ++r) {
        const auto& lo = rows[r];
        const auto& hi = rows[r + 1];
        std::size_t i = 0, j = 0;
        while (i + 1 < lo.size() || j + 1 < hi.size()) {
            bool advance_lo;
            if (j + 1 >= hi.size()) advance_lo = true;
            else if (i + 1 >= lo.size()) advance_lo = false;
            else {
                const double dlo = (rm.verts[lo[i + 1]] - rm.verts[hi[j]]).norm();
                const double dhi = (rm.verts[hi[j + 1]] - rm.verts[lo[i]]).norm();
                advance_lo = dlo <= dhi;
            }
            if (advance_lo) {
                rm.cells.push_back({lo[i], lo[i + 1], hi[j]});
                ++i;
            } else {
                rm.cells.push_back({lo[i], hi[j + 1], hi[j]});
                ++j;
            }
        }
    }

    detail::RawMesh::Group gl{sides.left, {}}, gr{sides.right, {}}, gb{sides.bottom, {}}, gt{sides.top, {}};
    for (std::size_t r = 0; r + 1 < rows.size(); ++r) {
        gl.edges.emplace_back(rows[r].front(), rows[r + 1].front());
        gr.edges.emplace_back(rows[r].back(), rows[r + 1].back());
    }
    for (std::size_t i = 0; i + 1 < rows.front().size(); ++i)
        gb.edges.emplace_back(rows.front()[i], rows.front()[i + 1]);
    for (std::size_t i = 0; i + 1 < rows.back().size(); ++i)
        gt.edges.emplace_back(rows.back()[i], rows.back()[i + 1]);
    rm.groups = {gl, gr, gb, gt};
    return rm.to_doc();
}

} // namespace wc2p

#endif
