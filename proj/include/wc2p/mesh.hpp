/** \file mesh.hpp
 * \brief Two-dimensional polygonal meshes with the geometry and adjacency data
 *        needed by the finite-volume scheme.
 *
 * Periodic boundaries are resolved at construction time: each periodic face
 * pair is merged into a single interior-like face carrying a coordinate shift,
 * so solver loops only ever see interior faces and wall/symmetry faces.
 */
#ifndef WC2P_MESH_HPP
#define WC2P_MESH_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "wc2p/geometry.hpp"

namespace wc2p {

class MeshError : public std::runtime_error {
public:
    explicit MeshError(const std::string& what) : std::runtime_error(what) {}
};

enum class BoundaryKind { slip_wall, symmetry, periodic };

inline const char* to_string(BoundaryKind k) {
    switch (k) {
        case BoundaryKind::slip_wall: return "slip_wall";
        case BoundaryKind::symmetry: return "symmetry";
        case BoundaryKind::periodic: return "periodic";
    }
    return "?";
}

struct Cell {
    std::vector<int> verts;   ///< vertex ids, counter-clockwise
    std::vector<int> faces;
    Vec2 centroid;
    double area = 0.0;
};

/// A mesh face. Interior faces (including merged periodic pairs) have
/// right >= 0; wall/symmetry faces have right == -1 and a boundary tag.
/// The unit normal points from the left cell towards the right cell.
struct Face {
    int v0 = -1, v1 = -1;   ///< endpoints in the traversal order of the left cell
    int left = -1;
    int right = -1;
    BoundaryKind tag = BoundaryKind::slip_wall;
    Vec2 normal;
    double length = 0.0;
    Vec2 midpoint;
    /// Offset added to right-cell coordinates to bring them adjacent to this
    /// face (nonzero only for faces merged from a periodic pair).
    Vec2 shift;
    bool periodic_seam = false;
};

struct Neighbor {
    int cell = -1;
    Vec2 shift;   ///< add to the neighbour's coordinates when viewed from the owner
};

/// A named group of boundary edges, as read from a mesh document or a
/// generator specification. Periodic groups are paired by translation.
struct BoundaryGroup {
    std::string name;
    BoundaryKind kind = BoundaryKind::slip_wall;
    std::vector<std::pair<int, int>> edges;   ///< vertex id pairs
};

struct Mesh {
    std::vector<Vec2> vertices;
    std::vector<Cell> cells;
    std::vector<Face> faces;
    std::vector<std::pair<int, int>> boundary_pairs;   ///< merged periodic (kept face, partner cell)
    std::vector<std::vector<Neighbor>> von_neumann;
    std::vector<std::vector<Neighbor>> moore;
    /// Cells incident on each vertex (through periodic seams); the shift maps
    /// the cell's coordinates into the frame of this vertex.
    std::vector<std::vector<Neighbor>> vertex_cells;
    double h_avg = 0.0;

    int n_cells() const { return static_cast<int>(cells.size()); }
    int n_faces() const { return static_cast<int>(faces.size()); }
    double total_area() const {
        double a = 0.0;
        for (const auto& c : cells) a += c.area;
        return a;
    }
};

namespace detail {

inline double polygon_signed_area(const std::vector<Vec2>& v, const std::vector<int>& ids) {
    double a = 0.0;
    const std::size_t n = ids.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2& p = v[ids[k]];
        const Vec2& q = v[ids[(k + 1) % n]];
        a += p.x * q.y - q.x * p.y;
    }
    return 0.5 * a;
}

inline Vec2 polygon_centroid(const std::vector<Vec2>& v, const std::vector<int>& ids, double area) {
    Vec2 c;
    const std::size_t n = ids.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2& p = v[ids[k]];
        const Vec2& q = v[ids[(k + 1) % n]];
        const double w = p.x * q.y - q.x * p.y;
        c.x += (p.x + q.x) * w;
        c.y += (p.y + q.y) * w;
    }
    return c / (6.0 * area);
}

/// Union-find over vertex ids carrying the positional offset of each vertex
/// relative to its class root ("unfolded" coordinates across periodic seams).
class VertexUnion {
public:
    explicit VertexUnion(std::size_t n) : parent_(n), off_(n) {
        for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<int>(i);
    }

    int find(int v) {
        if (parent_[v] == v) return v;
        const int r = find(parent_[v]);
        off_[v] += off_[parent_[v]];
        parent_[v] = r;
        return r;
    }

    /// Offset such that pos(v) - offset(v) is identical for the whole class.
    Vec2 offset(int v) {
        find(v);
        return parent_[v] == v ? Vec2{} : off_[v];
    }

    /// Declare pos(a) - pos(b) == delta (a and b are periodic images).
    void unite(int a, int b, const std::vector<Vec2>& pos) {
        const int ra = find(a), rb = find(b);
        if (ra == rb) return;
        // unfolded(b) must equal unfolded(a)
        const Vec2 ua = pos[a] - offset(a);
        const Vec2 ub = pos[b] - offset(b);
        parent_[rb] = ra;
        off_[rb] = ub - ua;
    }

private:
    std::vector<int> parent_;
    std::vector<Vec2> off_;
};

struct EdgeKey {
    int a, b;
    bool operator==(const EdgeKey& o) const { return a == o.a && b == o.b; }
};
struct EdgeKeyHash {
    std::size_t operator()(const EdgeKey& k) const {
        return std::hash<std::uint64_t>()((static_cast<std::uint64_t>(k.a) << 32) ^
                                          static_cast<std::uint64_t>(k.b));
    }
};

inline EdgeKey edge_key(int a, int b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

} // namespace detail

/// Assemble a Mesh from raw vertices, cell vertex loops and boundary groups.
/// Fixes orientation, builds faces by shared-edge hashing, pairs and merges
/// periodic groups, and precomputes von Neumann and Moore adjacency.
inline Mesh finalize_mesh(std::vector<Vec2> vertices,
                          std::vector<std::vector<int>> cell_verts,
                          std::vector<BoundaryGroup> groups) {
    Mesh m;
    m.vertices = std::move(vertices);
    const int n_cells = static_cast<int>(cell_verts.size());
    m.cells.resize(n_cells);

    for (int i = 0; i < n_cells; ++i) {
        auto& ids = cell_verts[i];
        if (ids.size() < 3)
            throw MeshError("cell " + std::to_string(i) + " has fewer than 3 vertices");
        for (int v : ids)
            if (v < 0 || v >= static_cast<int>(m.vertices.size()))
                throw MeshError("cell " + std::to_string(i) + " references missing vertex " +
                                std::to_string(v));
        double area = detail::polygon_signed_area(m.vertices, ids);
        if (area < 0.0) {   // enforce counter-clockwise orientation
            std::reverse(ids.begin(), ids.end());
            area = -area;
        }
        if (!(area > 0.0))
            throw MeshError("cell " + std::to_string(i) + " has non-positive area");
        m.cells[i].verts = ids;
        m.cells[i].area = area;
        m.cells[i].centroid = detail::polygon_centroid(m.vertices, ids, area);
    }

    // duplicate-element check
    {
        std::map<std::vector<int>, int> seen;
        for (int i = 0; i < n_cells; ++i) {
            std::vector<int> sorted = m.cells[i].verts;
            std::sort(sorted.begin(), sorted.end());
            auto [it, fresh] = seen.emplace(std::move(sorted), i);
            if (!fresh)
                throw MeshError("duplicate cells " + std::to_string(it->second) + " and " +
                                std::to_string(i));
        }
    }

    // faces via shared-edge hashing; traversal order of the first visitor wins
    std::unordered_map<detail::EdgeKey, int, detail::EdgeKeyHash> edge_face;
    for (int i = 0; i < n_cells; ++i) {
        const auto& ids = m.cells[i].verts;
        const std::size_t n = ids.size();
        for (std::size_t k = 0; k < n; ++k) {
            const int a = ids[k], b = ids[(k + 1) % n];
            const auto key = detail::edge_key(a, b);
            auto it = edge_face.find(key);
            if (it == edge_face.end()) {
                Face f;
                f.v0 = a;
                f.v1 = b;
                f.left = i;
                const int fid = static_cast<int>(m.faces.size());
                m.faces.push_back(f);
                edge_face.emplace(key, fid);
                m.cells[i].faces.push_back(fid);
            } else {
                Face& f = m.faces[it->second];
                if (f.right >= 0)
                    throw MeshError("non-manifold edge (" + std::to_string(a) + "," +
                                    std::to_string(b) + ") shared by more than two cells");
                f.right = i;
                m.cells[i].faces.push_back(it->second);
            }
        }
    }

    for (auto& f : m.faces) {
        const Vec2 e = m.vertices[f.v1] - m.vertices[f.v0];
        f.length = e.norm();
        if (!(f.length > 0.0)) throw MeshError("zero-length face");
        f.normal = perp_cw(e) / f.length;   // outward of the left (ccw) cell
        f.midpoint = (m.vertices[f.v0] + m.vertices[f.v1]) * 0.5;
    }

    // tag boundary faces from the groups
    std::vector<int> face_group(m.faces.size(), -1);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        for (auto [a, b] : groups[g].edges) {
            if (a < 0 || a >= static_cast<int>(m.vertices.size()) || b < 0 ||
                b >= static_cast<int>(m.vertices.size()))
                throw MeshError("boundary group '" + groups[g].name +
                                "' references a missing vertex");
            auto it = edge_face.find(detail::edge_key(a, b));
            if (it == edge_face.end())
                throw MeshError("boundary group '" + groups[g].name +
                                "' references edge (" + std::to_string(a) + "," +
                                std::to_string(b) + ") that is not a mesh edge");
            Face& f = m.faces[it->second];
            if (f.right >= 0)
                throw MeshError("boundary group '" + groups[g].name +
                                "' tags an interior face");
            f.tag = groups[g].kind;
            face_group[it->second] = static_cast<int>(g);
        }
    }
    for (std::size_t fid = 0; fid < m.faces.size(); ++fid)
        if (m.faces[fid].right < 0 && face_group[fid] < 0)
            throw MeshError("boundary face " + std::to_string(fid) + " carries no boundary tag");

    // pair periodic faces within each group name and merge each pair
    detail::VertexUnion vu(m.vertices.size());
    {
        std::map<std::string, std::vector<int>> per_name;
        for (std::size_t fid = 0; fid < m.faces.size(); ++fid)
            if (m.faces[fid].right < 0 && m.faces[fid].tag == BoundaryKind::periodic)
                per_name[groups[face_group[fid]].name].push_back(static_cast<int>(fid));

        std::vector<int> drop(m.faces.size(), 0);
        std::vector<int> replaced_by(m.faces.size(), -1);
        double scale = 0.0;
        for (const auto& v : m.vertices) scale = std::max(scale, std::max(std::abs(v.x), std::abs(v.y)));
        const double tol = 1e-9 * std::max(scale, 1.0);

        for (auto& [name, fids] : per_name) {
            if (fids.size() % 2 != 0)
                throw MeshError("periodic group '" + name + "' has an odd number of faces");
            // split by dominant normal sign along the dominant axis
            Vec2 nsum;
            for (int fid : fids) nsum += Vec2{std::abs(m.faces[fid].normal.x),
                                              std::abs(m.faces[fid].normal.y)};
            const bool along_x = nsum.x >= nsum.y;
            std::vector<int> lo, hi;
            for (int fid : fids) {
                const double s = along_x ? m.faces[fid].normal.x : m.faces[fid].normal.y;
                (s < 0 ? lo : hi).push_back(fid);
            }
            if (lo.size() != hi.size())
                throw MeshError("periodic group '" + name + "' sides do not match");
            Vec2 clo, chi;
            for (int fid : lo) clo += m.faces[fid].midpoint;
            for (int fid : hi) chi += m.faces[fid].midpoint;
            const Vec2 translation = chi / double(hi.size()) - clo / double(lo.size());

            for (int fa : lo) {
                int match = -1;
                for (int fb : hi) {
                    if (drop[fb]) continue;
                    if ((m.faces[fa].midpoint + translation - m.faces[fb].midpoint).norm() < tol) {
                        match = fb;
                        break;
                    }
                }
                if (match < 0)
                    throw MeshError("periodic group '" + name + "': no partner for face " +
                                    std::to_string(fa));
                Face& A = m.faces[fa];
                const Face& B = m.faces[match];
                if (std::abs(A.length - B.length) > 1e-12 * std::max(A.length, 1.0))
                    throw MeshError("periodic pair with mismatched face lengths");
                A.right = B.left;
                A.shift = A.midpoint - B.midpoint;
                A.periodic_seam = true;
                drop[match] = 1;
                replaced_by[match] = fa;
                m.boundary_pairs.emplace_back(fa, B.left);

                // merge the endpoint vertex classes (for Moore adjacency)
                const Vec2 a0 = m.vertices[A.v0], a1 = m.vertices[A.v1];
                const Vec2 b0 = m.vertices[B.v0], b1 = m.vertices[B.v1];
                auto unite_match = [&](int va, const Vec2& pa) {
                    if ((pa + translation - b0).norm() < tol) vu.unite(va, B.v0, m.vertices);
                    else if ((pa + translation - b1).norm() < tol) vu.unite(va, B.v1, m.vertices);
                    else throw MeshError("periodic pair with non-matching endpoints");
                };
                unite_match(A.v0, a0);
                unite_match(A.v1, a1);
            }
        }

        // compact the face list, rewrite cell face references
        if (!m.boundary_pairs.empty()) {
            std::vector<int> newid(m.faces.size(), -1);
            std::vector<Face> kept;
            kept.reserve(m.faces.size());
            for (std::size_t fid = 0; fid < m.faces.size(); ++fid) {
                if (drop[fid]) continue;
                newid[fid] = static_cast<int>(kept.size());
                kept.push_back(m.faces[fid]);
            }
            for (auto& c : m.cells) {
                for (auto& fid : c.faces)
                    fid = newid[replaced_by[fid] >= 0 ? replaced_by[fid] : fid];
            }
            for (auto& p : m.boundary_pairs) p.first = newid[p.first];
            m.faces = std::move(kept);
        }
    }

    // von Neumann adjacency from faces
    m.von_neumann.resize(n_cells);
    for (const auto& f : m.faces) {
        if (f.right < 0) continue;
        m.von_neumann[f.left].push_back({f.right, f.shift});
        m.von_neumann[f.right].push_back({f.left, -f.shift});
    }

    // Moore adjacency from shared (merged) vertex classes
    {
        std::unordered_map<int, std::vector<std::pair<int, Vec2>>> class_cells;
        for (int i = 0; i < n_cells; ++i) {
            for (int v : m.cells[i].verts) {
                const int r = vu.find(v);
                class_cells[r].emplace_back(i, vu.offset(v));
            }
        }
        m.moore.resize(n_cells);
        auto push_unique = [](std::vector<Neighbor>& lst, int cell, const Vec2& shift) {
            for (const auto& nb : lst)
                if (nb.cell == cell && (nb.shift - shift).norm() < 1e-12) return;
            lst.push_back({cell, shift});
        };
        for (auto& [root, incid] : class_cells) {
            (void)root;
            for (const auto& [ci, si] : incid) {
                for (const auto& [cj, sj] : incid) {
                    const Vec2 shift = si - sj;
                    if (ci == cj && shift.norm() < 1e-12) continue;
                    push_unique(m.moore[ci], cj, shift);
                }
            }
        }
        m.vertex_cells.resize(m.vertices.size());
        for (int v = 0; v < static_cast<int>(m.vertices.size()); ++v) {
            const Vec2 ov = vu.offset(v);
            for (const auto& [cj, sj] : class_cells[vu.find(v)])
                push_unique(m.vertex_cells[v], cj, ov - sj);
        }
        for (auto& lst : m.moore)
            std::sort(lst.begin(), lst.end(), [](const Neighbor& a, const Neighbor& b) {
                return a.cell < b.cell || (a.cell == b.cell && a.shift.x < b.shift.x);
            });
    }

    double total = 0.0;
    for (const auto& c : m.cells) total += c.area;
    m.h_avg = std::sqrt(total / n_cells);
    return m;
}

// ---------------------------------------------------------------------------
// Cartesian builder

struct CartesianBoundaries {
    BoundaryKind left = BoundaryKind::slip_wall;
    BoundaryKind right = BoundaryKind::slip_wall;
    BoundaryKind bottom = BoundaryKind::slip_wall;
    BoundaryKind top = BoundaryKind::slip_wall;
};

inline Mesh build_cartesian(int nx, int ny, double lx, double ly,
                            Vec2 origin = {0.0, 0.0},
                            CartesianBoundaries bc = {}) {
    if (nx < 1 || ny < 1) throw MeshError("build_cartesian: nx, ny must be >= 1");
    if (!(lx > 0.0) || !(ly > 0.0)) throw MeshError("build_cartesian: extent must be positive");
    const bool px = bc.left == BoundaryKind::periodic || bc.right == BoundaryKind::periodic;
    const bool py = bc.bottom == BoundaryKind::periodic || bc.top == BoundaryKind::periodic;
    if (px && bc.left != bc.right)
        throw MeshError("build_cartesian: periodic sides must be declared in opposite pairs");
    if (py && bc.bottom != bc.top)
        throw MeshError("build_cartesian: periodic sides must be declared in opposite pairs");

    const double dx = lx / nx, dy = ly / ny;
    std::vector<Vec2> verts;
    verts.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i)
            verts.push_back({origin.x + i * dx, origin.y + j * dy});
    auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };

    std::vector<std::vector<int>> cells;
    cells.reserve(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            cells.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});

    std::vector<BoundaryGroup> groups;
    auto add_side = [&](const char* base, BoundaryKind kind, auto&& edges) {
        BoundaryGroup g;
        g.kind = kind;
        g.name = kind == BoundaryKind::periodic ? std::string("periodic_") + base : base;
        g.edges = edges;
        groups.push_back(std::move(g));
    };
    {
        std::vector<std::pair<int, int>> e;
        for (int j = 0; j < ny; ++j) e.emplace_back(vid(0, j), vid(0, j + 1));
        add_side("x", bc.left, e);
    }
    {
        std::vector<std::pair<int, int>> e;
        for (int j = 0; j < ny; ++j) e.emplace_back(vid(nx, j), vid(nx, j + 1));
        add_side("x", bc.right, e);
    }
    {
        std::vector<std::pair<int, int>> e;
        for (int i = 0; i < nx; ++i) e.emplace_back(vid(i, 0), vid(i + 1, 0));
        add_side("y", bc.bottom, e);
    }
    {
        std::vector<std::pair<int, int>> e;
        for (int i = 0; i < nx; ++i) e.emplace_back(vid(i, ny), vid(i + 1, ny));
        add_side("y", bc.top, e);
    }
    return finalize_mesh(std::move(verts), std::move(cells), std::move(groups));
}

// ---------------------------------------------------------------------------
// Native ASCII mesh format:  header "wc2p-mesh v1"; "vertices N" + N "x y"
// lines; "cells M" + M "k id1..idk" lines; "boundary G" + G groups, each
// "tag name count" followed by "v1 v2" edge lines. '#' starts a comment.

inline Mesh import_mesh(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    auto fail = [&](const std::string& msg) -> void {
        throw MeshError("mesh document line " + std::to_string(lineno) + ": " + msg);
    };
    auto next_tokens = [&]() -> std::vector<std::string> {
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            std::vector<std::string> toks;
            std::string t;
            while (ls >> t) toks.push_back(t);
            if (!toks.empty()) return toks;
        }
        fail("unexpected end of document");
        return {};
    };
    auto to_int = [&](const std::string& s) -> int {
        try {
            std::size_t pos = 0;
            const int v = std::stoi(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            fail("expected an integer, got '" + s + "'");
            return 0;
        }
    };
    auto to_double = [&](const std::string& s) -> double {
        try {
            std::size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            fail("expected a number, got '" + s + "'");
            return 0.0;
        }
    };

    auto header = next_tokens();
    if (header.size() != 2 || header[0] != "wc2p-mesh" || header[1] != "v1")
        fail("expected header 'wc2p-mesh v1'");

    auto vh = next_tokens();
    if (vh.size() != 2 || vh[0] != "vertices") fail("expected 'vertices N'");
    const int nv = to_int(vh[1]);
    std::vector<Vec2> verts(nv);
    for (int i = 0; i < nv; ++i) {
        auto t = next_tokens();
        if (t.size() != 2) fail("expected 'x y'");
        verts[i] = {to_double(t[0]), to_double(t[1])};
    }

    auto ch = next_tokens();
    if (ch.size() != 2 || ch[0] != "cells") fail("expected 'cells M'");
    const int nc = to_int(ch[1]);
    std::vector<std::vector<int>> cells(nc);
    for (int i = 0; i < nc; ++i) {
        auto t = next_tokens();
        if (t.empty()) fail("expected cell line");
        const int k = to_int(t[0]);
        if (k < 3 || static_cast<int>(t.size()) != k + 1)
            fail("cell line must read 'k id1..idk'");
        for (int j = 0; j < k; ++j) {
            const int v = to_int(t[j + 1]);
            if (v < 0 || v >= nv) fail("dangling vertex id " + std::to_string(v));
            cells[i].push_back(v);
        }
    }

    auto bh = next_tokens();
    if (bh.size() != 2 || bh[0] != "boundary") fail("expected 'boundary G'");
    const int ng = to_int(bh[1]);
    std::vector<BoundaryGroup> groups(ng);
    for (int g = 0; g < ng; ++g) {
        auto t = next_tokens();
        if (t.size() != 3 || t[0] != "tag") fail("expected 'tag name count'");
        groups[g].name = t[1];
        if (t[1] == "slip_wall") groups[g].kind = BoundaryKind::slip_wall;
        else if (t[1] == "symmetry") groups[g].kind = BoundaryKind::symmetry;
        else if (t[1].rfind("periodic", 0) == 0) groups[g].kind = BoundaryKind::periodic;
        else fail("unknown boundary tag '" + t[1] + "'");
        const int cnt = to_int(t[2]);
        for (int e = 0; e < cnt; ++e) {
            auto et = next_tokens();
            if (et.size() != 2) fail("expected 'v1 v2'");
            const int a = to_int(et[0]), b = to_int(et[1]);
            if (a < 0 || a >= nv || b < 0 || b >= nv) fail("dangling vertex id in boundary edge");
            groups[g].edges.emplace_back(a, b);
        }
    }

    try {
        return finalize_mesh(std::move(verts), std::move(cells), std::move(groups));
    } catch (const MeshError& err) {
        throw MeshError(std::string("mesh document: ") + err.what());
    }
}

// ---------------------------------------------------------------------------
// Validation

struct MeshReport {
    bool pass = true;
    double max_closure_residual = 0.0;   ///< max over cells of |sum n*Gamma|
    double min_area = 0.0;
    double min_face_length = 0.0;
    double max_normal_deviation = 0.0;   ///< max | |n|-1 |
    int orphan_cells = 0;                ///< cells with no interior neighbour
    std::vector<std::string> messages;
};

inline MeshReport validate_mesh(const Mesh& m) {
    MeshReport r;
    r.min_area = std::numeric_limits<double>::infinity();
    r.min_face_length = std::numeric_limits<double>::infinity();
    const double href = m.h_avg > 0 ? m.h_avg : 1.0;

    for (int i = 0; i < m.n_cells(); ++i) {
        const Cell& c = m.cells[i];
        r.min_area = std::min(r.min_area, c.area);
        if (!(c.area > 0.0)) {
            r.pass = false;
            r.messages.push_back("cell " + std::to_string(i) + " has non-positive area");
        }
        Vec2 sum;
        for (int fid : c.faces) {
            const Face& f = m.faces[fid];
            const double sgn = f.left == i ? 1.0 : -1.0;
            sum += sgn * f.length * f.normal;
        }
        r.max_closure_residual = std::max(r.max_closure_residual, sum.norm());
        if (m.von_neumann[i].empty()) ++r.orphan_cells;
    }
    for (const auto& f : m.faces) {
        r.min_face_length = std::min(r.min_face_length, f.length);
        r.max_normal_deviation = std::max(r.max_normal_deviation, std::abs(f.normal.norm() - 1.0));
    }
    if (r.max_closure_residual > 1e-12 * href) {
        r.pass = false;
        r.messages.push_back("closed-polygon residual exceeds tolerance");
    }
    if (r.max_normal_deviation > 1e-12) {
        r.pass = false;
        r.messages.push_back("non-unit face normal");
    }
    if (m.n_cells() > 1 && r.orphan_cells > 0) {
        r.pass = false;
        r.messages.push_back(std::to_string(r.orphan_cells) + " orphan cells");
    }
    // von_neumann(i) must be a subset of moore(i)
    for (int i = 0; i < m.n_cells(); ++i) {
        for (const auto& nb : m.von_neumann[i]) {
            bool found = false;
            for (const auto& mb : m.moore[i])
                if (mb.cell == nb.cell && (mb.shift - nb.shift).norm() < 1e-12) { found = true; break; }
            if (!found) {
                r.pass = false;
                r.messages.push_back("von Neumann neighbour of cell " + std::to_string(i) +
                                     " missing from Moore set");
            }
        }
    }
    return r;
}

} // namespace wc2p

#endif
