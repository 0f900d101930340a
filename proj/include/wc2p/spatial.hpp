/** \file spatial.hpp
 * \brief Cell-centred gradients (weighted least squares), Barth-Jespersen
 *        limiting, the regularized interface normal, the three-step curvature
 *        procedure, and the linear-reconstruction volume term.
 */
#ifndef WC2P_SPATIAL_HPP
#define WC2P_SPATIAL_HPP

#include <array>
#include <cmath>
#include <vector>

#include "wc2p/mesh.hpp"
#include "wc2p/model.hpp"

namespace wc2p {

enum class Stencil { von_neumann, moore };

struct GradientField {
    std::vector<std::array<Vec2, 4>> grad;        ///< per cell, per conserved variable
    std::vector<std::array<double, 4>> limiter;   ///< Barth-Jespersen factors in [0,1]
};

struct CurvatureField {
    std::vector<Vec2> normal;         ///< regularized interface normal per cell
    std::vector<double> kappa_cell;
    std::vector<double> kappa_face;
};

/** Inverse-distance-weighted least-squares gradient operator.
 *
 * The overdetermined per-cell system is factorized once (Householder QR) and
 * reduced to coefficient vectors, so each gradient evaluation is a short dot
 * product over the stencil: grad q|_i = sum_k c_k (q_k - q_i).
 */
class WlsOperator {
public:
    WlsOperator(const Mesh& mesh, Stencil stencil) {
        const auto& adj = stencil == Stencil::moore ? mesh.moore : mesh.von_neumann;
        offsets_.resize(mesh.n_cells() + 1);
        for (int i = 0; i < mesh.n_cells(); ++i) {
            const auto& nbs = adj[i];
            const std::size_t m = nbs.size();
            std::vector<Vec2> rows(m);
            std::vector<double> w(m);
            for (std::size_t k = 0; k < m; ++k) {
                const Vec2 dx = mesh.cells[nbs[k].cell].centroid + nbs[k].shift -
                                mesh.cells[i].centroid;
                const double dist = dx.norm();
                if (!(dist > 0.0))
                    throw MeshError("wls: coincident stencil centroids at cell " +
                                    std::to_string(i));
                w[k] = 1.0 / dist;
                rows[k] = w[k] * dx;
            }

            // Householder QR of the m-by-2 matrix with rows rows[k]
            std::array<std::vector<double>, 2> q_cols;   // columns of Q1 (m each)
            double r00, r01, r11;
            {
                std::vector<double> a0(m), a1(m);
                for (std::size_t k = 0; k < m; ++k) { a0[k] = rows[k].x; a1[k] = rows[k].y; }
                double n0 = 0.0;
                for (double v : a0) n0 += v * v;
                n0 = std::sqrt(n0);
                if (m < 2 || !(n0 > 0.0))
                    throw MeshError("wls: rank-deficient stencil at cell " + std::to_string(i));
                std::vector<double> v0 = a0;
                v0[0] += (a0[0] >= 0.0 ? n0 : -n0);
                double vn0 = 0.0;
                for (double v : v0) vn0 += v * v;
                auto reflect0 = [&](std::vector<double>& x) {
                    double d = 0.0;
                    for (std::size_t k = 0; k < m; ++k) d += v0[k] * x[k];
                    const double f = 2.0 * d / vn0;
                    for (std::size_t k = 0; k < m; ++k) x[k] -= f * v0[k];
                };
                reflect0(a0);
                reflect0(a1);
                r00 = a0[0];
                r01 = a1[0];
                std::vector<double> v1(m, 0.0);
                double n1 = 0.0;
                for (std::size_t k = 1; k < m; ++k) n1 += a1[k] * a1[k];
                n1 = std::sqrt(n1);
                const double scale = std::max(std::abs(r00), 1e-300);
                if (!(n1 > 1e-12 * scale))
                    throw MeshError("wls: collinear stencil at cell " + std::to_string(i));
                for (std::size_t k = 1; k < m; ++k) v1[k] = a1[k];
                v1[1] += (a1[1] >= 0.0 ? n1 : -n1);
                double vn1 = 0.0;
                for (double v : v1) vn1 += v * v;
                auto reflect1 = [&](std::vector<double>& x) {
                    double d = 0.0;
                    for (std::size_t k = 1; k < m; ++k) d += v1[k] * x[k];
                    const double f = 2.0 * d / vn1;
                    for (std::size_t k = 1; k < m; ++k) x[k] -= f * v1[k];
                };
                std::vector<double> t = a1;
                reflect1(t);
                r11 = t[1];
                // columns of Q1: apply both reflections to unit vectors
                for (int c = 0; c < 2; ++c) q_cols[c].assign(m, 0.0);
                for (std::size_t k = 0; k < m; ++k) {
                    std::vector<double> e(m, 0.0);
                    e[k] = 1.0;
                    reflect0(e);
                    reflect1(e);
                    q_cols[0][k] = e[0];
                    q_cols[1][k] = e[1];
                }
            }

            // back-substitute to coefficient vectors: c_k = w_k R^-1 (Q1^T)_{:,k}
            for (std::size_t k = 0; k < m; ++k) {
                const double gy = q_cols[1][k] / r11;
                const double gx = (q_cols[0][k] - r01 * gy) / r00;
                coeffs_.push_back(Vec2{gx, gy} * w[k]);
                nbr_.push_back(nbs[k].cell);
            }
            offsets_[i + 1] = static_cast<int>(nbr_.size());
        }
    }

    void gradient(const std::vector<double>& q, std::vector<Vec2>& out) const {
        const int n = static_cast<int>(offsets_.size()) - 1;
        out.assign(n, Vec2{});
        for (int i = 0; i < n; ++i) {
            Vec2 g;
            for (int k = offsets_[i]; k < offsets_[i + 1]; ++k)
                g += coeffs_[k] * (q[nbr_[k]] - q[i]);
            out[i] = g;
        }
    }

    void gradient_states(const std::vector<State>& u, std::vector<std::array<Vec2, 4>>& out) const {
        const int n = static_cast<int>(offsets_.size()) - 1;
        out.assign(n, {});
        for (int i = 0; i < n; ++i) {
            std::array<Vec2, 4> g{};
            for (int k = offsets_[i]; k < offsets_[i + 1]; ++k) {
                const State d = u[nbr_[k]] - u[i];
                for (int c = 0; c < 4; ++c) g[c] += coeffs_[k] * d[c];
            }
            out[i] = g;
        }
    }

private:
    std::vector<int> offsets_;     ///< CSR offsets into coeffs_/nbr_
    std::vector<Vec2> coeffs_;
    std::vector<int> nbr_;
};

inline std::vector<Vec2> wls_gradient(const std::vector<double>& values, const Mesh& mesh,
                                      Stencil stencil) {
    std::vector<Vec2> out;
    WlsOperator(mesh, stencil).gradient(values, out);
    return out;
}

/// Face midpoint in the frame of the given cell (periodic faces live in the
/// left cell's frame; the right cell sees them shifted).
inline Vec2 face_midpoint_for(const Face& f, int cell) {
    return cell == f.right && f.periodic_seam ? f.midpoint - f.shift : f.midpoint;
}

/// Component-wise Barth-Jespersen limiting: extrapolations to every face
/// midpoint stay within the min/max over the cell and its face neighbours.
/// Under gravity, boundary cells are one-sided pressure extrema, so the
/// pressure bounds are widened by hydrostatic virtual-neighbour values
/// mirrored across each wall face; plain limiting would clip the body-force
/// slope there and leave a spurious wall-normal acceleration of order g/4.
inline GradientField limit_gradients(const std::vector<State>& u,
                                     std::vector<std::array<Vec2, 4>> gradients,
                                     const Mesh& mesh, const Params& p) {
    GradientField gf;
    gf.grad = std::move(gradients);
    gf.limiter.assign(mesh.n_cells(), {1.0, 1.0, 1.0, 1.0});
    const bool grav = p.gravity.x != 0.0 || p.gravity.y != 0.0;

    for (int i = 0; i < mesh.n_cells(); ++i) {
        std::array<double, 4> qmin, qmax;
        for (int c = 0; c < 4; ++c) qmin[c] = qmax[c] = u[i][c];
        for (const auto& nb : mesh.von_neumann[i]) {
            for (int c = 0; c < 4; ++c) {
                qmin[c] = std::min(qmin[c], u[nb.cell][c]);
                qmax[c] = std::max(qmax[c], u[nb.cell][c]);
            }
        }
        if (grav) {
            for (int fid : mesh.cells[i].faces) {
                const Face& f = mesh.faces[fid];
                if (f.right >= 0) continue;
                const Vec2 d = (f.midpoint - mesh.cells[i].centroid) * 2.0;
                const double wv =
                    u[i].w + mix_rho(u[i].psi, p) * p.gravity.dot(d) / p.beta;
                qmin[0] = std::min(qmin[0], wv);
                qmax[0] = std::max(qmax[0], wv);
            }
        }
        for (int fid : mesh.cells[i].faces) {
            const Vec2 dx = face_midpoint_for(mesh.faces[fid], i) - mesh.cells[i].centroid;
            for (int c = 0; c < 4; ++c) {
                const double d = gf.grad[i][c].dot(dx);
                const double span = std::max(std::abs(qmax[c]), std::abs(qmin[c]));
                if (std::abs(d) <= 1e-14 * std::max(span, 1e-300)) continue;
                const double phi = d > 0.0 ? (qmax[c] - u[i][c]) / d : (qmin[c] - u[i][c]) / d;
                gf.limiter[i][c] = std::min(gf.limiter[i][c], std::max(0.0, phi));
            }
        }
        for (int c = 0; c < 4; ++c) {
            gf.grad[i][c] = gf.grad[i][c] * std::min(1.0, gf.limiter[i][c]);
            gf.limiter[i][c] = std::min(1.0, gf.limiter[i][c]);
        }
    }
    return gf;
}

/// Regularized interface normal; its magnitude diminishes smoothly away from
/// the interface instead of blowing up on vanishing gradients.
inline Vec2 scls_normal(const Vec2& grad_psi, double eps, const Params& p) {
    const double g2 = grad_psi.norm2();
    return grad_psi / std::sqrt(g2 + eps * std::exp(-p.delta * eps * eps * g2));
}

/// Three-step curvature: regularized normals from the psi gradient, gradients
/// of both normal components, then kappa = -div n. Face values are averages of
/// the adjacent cells; boundary faces copy the interior cell.
inline CurvatureField curvature(const std::vector<double>& psi, const Mesh& mesh,
                                const WlsOperator& wls, double eps, const Params& p) {
    CurvatureField cf;
    std::vector<Vec2> gpsi;
    wls.gradient(psi, gpsi);
    const int n = mesh.n_cells();
    cf.normal.resize(n);
    for (int i = 0; i < n; ++i) cf.normal[i] = scls_normal(gpsi[i], eps, p);

    std::vector<double> nx(n), ny(n);
    for (int i = 0; i < n; ++i) { nx[i] = cf.normal[i].x; ny[i] = cf.normal[i].y; }
    std::vector<Vec2> gnx, gny;
    wls.gradient(nx, gnx);
    wls.gradient(ny, gny);
    cf.kappa_cell.resize(n);
    for (int i = 0; i < n; ++i) cf.kappa_cell[i] = -(gnx[i].x + gny[i].y);

    cf.kappa_face.resize(mesh.n_faces());
    for (int fid = 0; fid < mesh.n_faces(); ++fid) {
        const Face& f = mesh.faces[fid];
        cf.kappa_face[fid] = f.right >= 0
                                 ? 0.5 * (cf.kappa_cell[f.left] + cf.kappa_cell[f.right])
                                 : cf.kappa_cell[f.left];
    }
    return cf;
}

/// Volume contribution of the non-conservative products under linear
/// reconstruction: [B_x grad_x U + B_y grad_y U] * Omega with cell-centred
/// state, limited gradients and cell-centred curvature.
inline State volume_noncons_term(const State& u_bar, const std::array<Vec2, 4>& grad,
                                 double kappa_cell, double omega, const Params& p) {
    const State ux{grad[0].x, grad[1].x, grad[2].x, grad[3].x};
    const State uy{grad[0].y, grad[1].y, grad[2].y, grad[3].y};
    const State bx = mat_vec(b_x(u_bar, kappa_cell, p), ux);
    const State by = mat_vec(b_y(u_bar, kappa_cell, p), uy);
    return (bx + by) * omega;
}

} // namespace wc2p

#endif
