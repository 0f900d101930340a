/** \file stepper.hpp
 * \brief Residual assembly and SSP-RK2 time marching.
 *
 * The Solver owns the setup-time operators (least-squares stencils, diamond
 * geometry) and per-stage scratch fields; a stage rebuilds curvature, limited
 * gradients and the velocity scale from the stage state before assembling the
 * residual, so the stage operator is a fixed function of the stage state.
 */
#ifndef WC2P_STEPPER_HPP
#define WC2P_STEPPER_HPP

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "wc2p/hllc.hpp"
#include "wc2p/mesh.hpp"
#include "wc2p/model.hpp"
#include "wc2p/spatial.hpp"
#include "wc2p/terms.hpp"

namespace wc2p {

struct SolverMode {
    int order = 1;                ///< 1: cell averages; 2: limited linear reconstruction
    bool csf_source = false;      ///< surface tension as a cell source instead of inside the solver
    bool regularization = true;
    std::optional<double> kappa_override;   ///< constant curvature instead of the computed field
};

struct Diagnostics {
    long long order1_fallbacks = 0;      ///< faces reverted to cell averages
    long long degenerate_contacts = 0;   ///< contact-speed fallbacks in the Riemann solver
    double min_dt = std::numeric_limits<double>::infinity();
};

struct FieldSnapshot {
    std::vector<State> u;
    double time = 0.0;
    long long step = 0;
    Diagnostics diag;
};

/// Mirror state at a slip or symmetry wall: normal momentum reflected,
/// pressure, tangential momentum and psi copied. Inputs in the global frame.
inline State ghost_state(BoundaryKind tag, const State& interior, const Vec2& normal) {
    if (tag != BoundaryKind::slip_wall && tag != BoundaryKind::symmetry)
        throw ConfigError("ghost_state: boundary kind has no ghost construction");
    const double mn = interior.mx * normal.x + interior.my * normal.y;
    return {interior.w, interior.mx - 2.0 * mn * normal.x, interior.my - 2.0 * mn * normal.y,
            interior.psi};
}

class Solver {
public:
    Solver(const Mesh& mesh, const Params& params, SolverMode mode = {})
        : mesh_(&mesh), p_(params), mode_(mode), wls_(mesh, Stencil::moore), dia_(mesh) {
        p_.validate();
        if (mode_.order != 1 && mode_.order != 2)
            throw ConfigError("solver order must be 1 or 2");
        eps_ = 0.5 * std::pow(mesh.h_avg, 1.0 - p_.d);
        has_viscosity_ = p_.mu1 > 0.0 || p_.mu2 > 0.0;
        needs_curvature_ = p_.sigma != 0.0 && !mode_.kappa_override;
    }

    const Params& params() const { return p_; }
    const SolverMode& mode() const { return mode_; }
    double eps() const { return eps_; }
    const CurvatureField& curvature_cache() const { return curv_; }
    const GradientField& gradient_cache() const { return grad_; }

    /// Curvature of an arbitrary state (output-time helper; the time loop uses
    /// the per-stage cache).
    CurvatureField curvature_of(const std::vector<State>& u) const {
        std::vector<double> psi(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) psi[i] = u[i].psi;
        CurvatureField cf = wc2p::curvature(psi, *mesh_, wls_, eps_, p_);
        if (mode_.kappa_override) {
            for (auto& k : cf.kappa_cell) k = *mode_.kappa_override;
            for (auto& k : cf.kappa_face) k = *mode_.kappa_override;
        }
        return cf;
    }

    /// Global time step: CFL times the per-cell minimum over the convective,
    /// viscous, gravitational and capillary bounds, with h_i = sqrt(Omega_i).
    double compute_dt(const std::vector<State>& u) const {
        const double gmag = p_.gravity.norm();
        double dt = std::numeric_limits<double>::infinity();
        for (int i = 0; i < mesh_->n_cells(); ++i) {
            const double h = std::sqrt(mesh_->cells[i].area);
            const double kappa =
                mode_.kappa_override ? *mode_.kappa_override
                                     : (i < static_cast<int>(curv_.kappa_cell.size())
                                            ? curv_.kappa_cell[i]
                                            : 0.0);
            // wave speeds along the velocity direction bound all orientations
            const double mmag = std::sqrt(u[i].mx * u[i].mx + u[i].my * u[i].my);
            const WaveData wd = eigen_data({u[i].w, mmag, 0.0, u[i].psi},
                                           mode_.csf_source ? 0.0 : kappa, p_);
            const double smax = std::max(std::abs(wd.lambda[0]), std::abs(wd.lambda[3]));
            // unsplit two-dimensional update: wave crossings in both directions
            // share the cell, so the convective bound carries a factor 1/2
            double di = h / (2.0 * smax);
            const auto [rho, mu] = mix_properties(u[i].psi, p_);
            if (mu > 0.0) di = std::min(di, rho * h * h / (4.0 * mu));
            if (gmag > 0.0) di = std::min(di, std::sqrt(h / gmag));
            if (p_.sigma > 0.0)
                di = std::min(di, std::sqrt((p_.rho1 + p_.rho2) * h * h * h /
                                            (4.0 * std::numbers::pi * p_.sigma)));
            dt = std::min(dt, di);
        }
        dt *= p_.cfl;
        if (!std::isfinite(dt) || !(dt > 0.0))
            throw SolverError("compute_dt produced a non-finite or non-positive step");
        return dt;
    }

    /// Rebuild curvature, limited gradients and the velocity scale for a stage.
    void build_stage_caches(const std::vector<State>& u) {
        const int n = mesh_->n_cells();
        psi_c_.resize(n);
        for (int i = 0; i < n; ++i) psi_c_[i] = u[i].psi;

        if (needs_curvature_) {
            curv_ = wc2p::curvature(psi_c_, *mesh_, wls_, eps_, p_);
        } else {
            const double k = mode_.kappa_override.value_or(0.0);
            curv_.kappa_cell.assign(n, k);
            curv_.kappa_face.assign(mesh_->n_faces(), k);
            curv_.normal.assign(n, Vec2{});
        }
        if (mode_.csf_source && p_.sigma != 0.0) wls_.gradient(psi_c_, gpsi_);

        if (mode_.order == 2) {
            wls_.gradient_states(u, raw_grad_);
            grad_ = limit_gradients(u, std::move(raw_grad_), *mesh_, p_);
        }

        gamma_ = 0.0;
        if (mode_.regularization) {
            gamma_ = velocity_scale(u, p_);
            if (gamma_ > 0.0) {
                u_c_.resize(n);
                v_c_.resize(n);
                for (int i = 0; i < n; ++i) {
                    const double rho = mix_rho(u[i].psi, p_);
                    u_c_[i] = u[i].mx / rho;
                    v_c_[i] = u[i].my / rho;
                }
                psi_v_ = dia_.vertex_values(psi_c_);
            }
        }
        if (has_viscosity_) {
            u_c_.resize(n);
            v_c_.resize(n);
            for (int i = 0; i < n; ++i) {
                const double rho = mix_rho(u[i].psi, p_);
                u_c_[i] = u[i].mx / rho;
                v_c_[i] = u[i].my / rho;
            }
            u_v_ = dia_.vertex_values(u_c_);
            v_v_ = dia_.vertex_values(v_c_);
            if (psi_v_.empty() || !mode_.regularization || gamma_ == 0.0)
                psi_v_ = dia_.vertex_values(psi_c_);
        }
    }

    /// Semi-discrete residual R_i for the current stage caches; faces are
    /// visited in ascending id order (deterministic accumulation).
    void assemble_residual(const std::vector<State>& u, std::vector<State>& r,
                           Diagnostics& diag) const {
        const Mesh& m = *mesh_;
        r.assign(m.n_cells(), State{});
        const GradientField* g = mode_.order == 2 ? &grad_ : nullptr;
        const bool reg_active = mode_.regularization && gamma_ > 0.0;
        const bool visc_active = has_viscosity_;

        for (int fid = 0; fid < m.n_faces(); ++fid) {
            const Face& f = m.faces[fid];
            const double kf = curv_.kappa_face[fid];
            const double k_hyp = mode_.csf_source ? 0.0 : kf;

            State ul = face_state(f.left, f, u, g);
            State ur;
            bool ok = mix_rho(ul.psi, p_) > 0.0;
            if (f.right >= 0) {
                ur = face_state(f.right, f, u, g);
                ok = ok && mix_rho(ur.psi, p_) > 0.0;
                if (!ok) {
                    ul = u[f.left];
                    ur = u[f.right];
                    ++diag.order1_fallbacks;
                }
            } else {
                if (!ok) {
                    ul = u[f.left];
                    ++diag.order1_fallbacks;
                }
                if (p_.gravity.x != 0.0 || p_.gravity.y != 0.0) {
                    // hydrostatic extrapolation of the wall pressure: the
                    // limited reconstruction clips the body-force slope in
                    // boundary cells, which are one-sided extrema
                    const Vec2 dx = f.midpoint - m.cells[f.left].centroid;
                    ul.w = u[f.left].w + mix_rho(ul.psi, p_) *
                                             (p_.gravity.x * dx.x + p_.gravity.y * dx.y) / p_.beta;
                }
                ur = ghost_state(f.tag, ul, f.normal);
            }

            const State ul_hat = rotate(ul, f.normal);
            const State ur_hat = rotate(ur, f.normal);
            StarStates st;
            try {
                st = star_states(ul_hat, ur_hat, k_hyp, p_);
            } catch (const std::runtime_error& err) {
                throw SolverError("face " + std::to_string(fid) + ": " + err.what());
            }
            if (st.degenerate_contact) ++diag.degenerate_contacts;
            const FluctuationPair fl = split_fluctuations(ul_hat, ur_hat, k_hyp, p_, &st);

            r[f.left] += unrotate(flux_x(ul_hat, p_) + fl.d_minus, f.normal) * f.length;
            if (f.right >= 0) {
                r[f.right] += unrotate(fl.d_plus - flux_x(ur_hat, p_), f.normal) * f.length;

                if (visc_active) {
                    const double mu_f = mix_mu(0.5 * (ul.psi + ur.psi), p_);
                    const State vf = viscous_face_flux(fid, dia_, u_c_, u_v_, v_c_, v_v_, mu_f, m);
                    r[f.left] -= vf;
                    r[f.right] += vf;
                }
                if (reg_active) {
                    const double fr = regularization_face_flux(
                        fid, dia_, psi_c_, psi_v_, 0.5 * (ul.psi + ur.psi), gamma_, eps_, m, p_);
                    r[f.left].psi -= fr;
                    r[f.right].psi += fr;
                }
            }
        }

        for (int i = 0; i < m.n_cells(); ++i) {
            const double omega = m.cells[i].area;
            if (g)
                r[i] += volume_noncons_term(u[i], g->grad[i],
                                            mode_.csf_source ? 0.0 : curv_.kappa_cell[i],
                                            omega, p_);
            r[i] -= gravity_source(u[i], omega, p_);
            if (mode_.csf_source && p_.sigma != 0.0) {
                const double sk = p_.sigma * curv_.kappa_cell[i] * omega;
                r[i].mx -= sk * gpsi_[i].x;
                r[i].my -= sk * gpsi_[i].y;
            }
        }
    }

    /// One SSP-RK2 step of size dt; stage caches are rebuilt for each stage.
    void ssprk2_step(FieldSnapshot& s, double dt) {
        const Mesh& m = *mesh_;
        const int n = m.n_cells();
        build_stage_caches(s.u);
        assemble_residual(s.u, r_, s.diag);
        u1_.resize(n);
        for (int i = 0; i < n; ++i) u1_[i] = s.u[i] - r_[i] * (dt / m.cells[i].area);
        check_admissible(u1_, s.time + dt);

        build_stage_caches(u1_);
        assemble_residual(u1_, r_, s.diag);
        for (int i = 0; i < n; ++i)
            s.u[i] = (s.u[i] + u1_[i] - r_[i] * (dt / m.cells[i].area)) * 0.5;
        check_admissible(s.u, s.time + dt);

        s.time += dt;
        ++s.step;
        s.diag.min_dt = std::min(s.diag.min_dt, dt);
    }

    /// March to t_end; obs(snapshot) is invoked on the initial state and after
    /// every completed step.
    template <class Obs>
    void advance(FieldSnapshot& s, double t_end, Obs&& obs) {
        obs(s);
        while (s.time < t_end - 1e-12 * std::max(t_end, 1.0)) {
            double dt = compute_dt(s.u);
            if (s.time + dt > t_end) dt = t_end - s.time;
            ssprk2_step(s, dt);
            obs(s);
        }
    }

private:
    State face_state(int cell, const Face& f, const std::vector<State>& u,
                     const GradientField* g) const {
        if (!g) return u[cell];
        const Vec2 dx = face_midpoint_for(f, cell) - mesh_->cells[cell].centroid;
        State s = u[cell];
        for (int c = 0; c < 4; ++c) s[c] += g->grad[cell][c].dot(dx);
        return s;
    }

    void check_admissible(const std::vector<State>& u, double time) const {
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double rho = mix_rho(u[i].psi, p_);
            if (!(rho > 0.0) || !std::isfinite(rho) || !std::isfinite(u[i].w) ||
                !std::isfinite(u[i].mx) || !std::isfinite(u[i].my))
                throw SolverError("inadmissible state in cell " + std::to_string(i) +
                                  " at t = " + std::to_string(time));
        }
    }

    const Mesh* mesh_;
    Params p_;
    SolverMode mode_;
    WlsOperator wls_;
    DiamondOperator dia_;
    double eps_ = 0.0;
    bool has_viscosity_ = false;
    bool needs_curvature_ = false;

    // per-stage caches and scratch
    CurvatureField curv_;
    GradientField grad_;
    std::vector<std::array<Vec2, 4>> raw_grad_;
    std::vector<Vec2> gpsi_;
    std::vector<double> psi_c_, u_c_, v_c_, psi_v_, u_v_, v_v_;
    std::vector<State> r_, u1_;
    double gamma_ = 0.0;
};

} // namespace wc2p

#endif
