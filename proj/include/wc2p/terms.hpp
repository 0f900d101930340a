/** \file terms.hpp
 * \brief Non-hyperbolic physics: diamond-path face gradients, viscous fluxes,
 *        gravity source, and the phase-field regularization flux.
 */
#ifndef WC2P_TERMS_HPP
#define WC2P_TERMS_HPP

#include <array>
#include <cmath>
#include <vector>

#include "wc2p/mesh.hpp"
#include "wc2p/model.hpp"
#include "wc2p/spatial.hpp"

namespace wc2p {

/** Green-Gauss gradients on the Coirier diamond around each interior face.
 *
 * The diamond is (left centroid, face vertex 0, right centroid, face vertex 1)
 * traversed counter-clockwise; vertex values come from inverse-distance
 * interpolation over all cells touching the vertex. Both the vertex weights
 * and the per-node Green-Gauss coefficients are pure geometry, precomputed at
 * construction.
 */
class DiamondOperator {
public:
    explicit DiamondOperator(const Mesh& mesh) : mesh_(&mesh) {
        // vertex interpolation weights
        v_off_.assign(mesh.vertices.size() + 1, 0);
        for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
            double wsum = 0.0;
            const std::size_t base = v_cell_.size();
            for (const auto& nb : mesh.vertex_cells[v]) {
                const double d = (mesh.vertices[v] - (mesh.cells[nb.cell].centroid + nb.shift)).norm();
                const double w = 1.0 / std::max(d, 1e-300);
                v_cell_.push_back(nb.cell);
                v_w_.push_back(w);
                wsum += w;
            }
            for (std::size_t k = base; k < v_w_.size(); ++k) v_w_[k] /= wsum;
            v_off_[v + 1] = static_cast<int>(v_cell_.size());
        }

        // per-face Green-Gauss node coefficients (zero for boundary faces)
        coeff_.assign(mesh.n_faces(), {});
        for (int fid = 0; fid < mesh.n_faces(); ++fid) {
            const Face& f = mesh.faces[fid];
            if (f.right < 0) continue;
            const std::array<Vec2, 4> pts{mesh.cells[f.left].centroid,
                                          mesh.vertices[f.v0],
                                          mesh.cells[f.right].centroid + f.shift,
                                          mesh.vertices[f.v1]};
            double area = 0.0;
            for (int k = 0; k < 4; ++k) {
                const Vec2& a = pts[k];
                const Vec2& b = pts[(k + 1) % 4];
                area += 0.5 * (a.x * b.y - b.x * a.y);
            }
            if (!(area > 0.0))
                throw MeshError("degenerate diamond at face " + std::to_string(fid));
            for (int k = 0; k < 4; ++k)
                coeff_[fid][k] = perp_cw(pts[(k + 1) % 4] - pts[(k + 3) % 4]) * (0.5 / area);
        }
    }

    /// Inverse-distance vertex interpolation of a per-cell scalar field.
    std::vector<double> vertex_values(const std::vector<double>& q) const {
        std::vector<double> out(mesh_->vertices.size(), 0.0);
        for (std::size_t v = 0; v < out.size(); ++v)
            for (int k = v_off_[v]; k < v_off_[v + 1]; ++k)
                out[v] += v_w_[k] * q[v_cell_[k]];
        return out;
    }

    /// Face gradient from cell values and precomputed vertex values.
    Vec2 face_gradient(int fid, const std::vector<double>& q,
                       const std::vector<double>& qv) const {
        const Face& f = mesh_->faces[fid];
        const auto& c = coeff_[fid];
        return c[0] * q[f.left] + c[1] * qv[f.v0] + c[2] * q[f.right] + c[3] * qv[f.v1];
    }

private:
    const Mesh* mesh_;
    std::vector<int> v_off_, v_cell_;
    std::vector<double> v_w_;
    std::vector<std::array<Vec2, 4>> coeff_;
};

/// Viscous flux (F_v n_x + G_v n_y) Gamma on an interior face, with the face
/// velocity gradients from the diamond path and mu interpolated to the face.
inline State viscous_face_flux(int fid, const DiamondOperator& dia,
                               const std::vector<double>& u, const std::vector<double>& uv,
                               const std::vector<double>& v, const std::vector<double>& vv,
                               double mu_face, const Mesh& mesh) {
    const Face& f = mesh.faces[fid];
    const Vec2 gu = dia.face_gradient(fid, u, uv);
    const Vec2 gv = dia.face_gradient(fid, v, vv);
    const double txx = 2.0 * mu_face * gu.x;
    const double txy = mu_face * (gu.y + gv.x);
    const double tyy = 2.0 * mu_face * gv.y;
    return State{0.0,
                 txx * f.normal.x + txy * f.normal.y,
                 txy * f.normal.x + tyy * f.normal.y,
                 0.0} * f.length;
}

inline State gravity_source(const State& u_bar, double omega, const Params& p) {
    const double rho = mix_rho(u_bar.psi, p);
    return {0.0, rho * p.gravity.x * omega, rho * p.gravity.y * omega, 0.0};
}

/// Regularization flux f_R . n Gamma through an interior face; enters only the
/// psi equation. Flux form keeps the discrete psi mass exactly conserved.
inline double regularization_face_flux(int fid, const DiamondOperator& dia,
                                       const std::vector<double>& psi,
                                       const std::vector<double>& psi_v,
                                       double psi_face, double gamma, double eps,
                                       const Mesh& mesh, const Params& p) {
    if (gamma == 0.0) return 0.0;
    const Face& f = mesh.faces[fid];
    const Vec2 gpsi = dia.face_gradient(fid, psi, psi_v);
    const Vec2 n = scls_normal(gpsi, eps, p);
    const Vec2 fr = gamma * (eps * gpsi.dot(n) * n + (1.0 - n.norm2()) * eps * gpsi -
                             psi_face * (1.0 - psi_face) * n);
    return fr.dot(f.normal) * f.length;
}

/// Instantaneous maximum velocity magnitude over interface cells (the
/// velocity-scale parameter of the regularization flux). The maximum is
/// restricted to cells with psi in [0.01, 0.99]: the scale is meant to track
/// how fast the interface is transported, and sampling the near-pure-phase
/// tails lets spurious currents there overdrive the sharpening until the
/// interface corrugates on fine meshes.
inline double velocity_scale(const std::vector<State>& u, const Params& p) {
    constexpr double band_lo = 0.01;
    constexpr double band_hi = 0.99;
    double vmax = 0.0;
    for (const auto& s : u) {
        if (s.psi < band_lo || s.psi > band_hi) continue;
        const double rho = mix_rho(s.psi, p);
        vmax = std::max(vmax, std::sqrt(s.mx * s.mx + s.my * s.my) / rho);
    }
    return vmax;
}

} // namespace wc2p

#endif
