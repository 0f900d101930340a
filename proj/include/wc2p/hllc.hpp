/** \file hllc.hpp
 * \brief HLLC-type path-conservative Riemann solver: segment-path integrals,
 *        wave-speed estimates, intermediate states and fluctuation splitting.
 *
 * All operations work on states already rotated into the face frame. The
 * interface curvature kappa is an input computed upstream; passing kappa = 0
 * recovers the surface-tension-free solver used by the CSF ablation mode
 * (equal star pressures).
 *
 * The star pressures are closed by the generalized Rankine-Hugoniot condition
 * of the pressure row across each outer wave, with the segment-path velocity
 * average taken between the outer state and its adjacent star state. The
 * resulting split is exactly path-conservative for the composed path through
 * the star states, and the contact-wave pressure jump recovers the
 * Young-Laplace law (exactly on a stationary contact, asymptotically in the
 * wave-speed limit otherwise).
 */
#ifndef WC2P_HLLC_HPP
#define WC2P_HLLC_HPP

#include <algorithm>
#include <cmath>

#include "wc2p/model.hpp"

namespace wc2p {

class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

struct StarStates {
    double s_l = 0.0, s_r = 0.0, s_star = 0.0;
    double pbeta_star_l = 0.0, pbeta_star_r = 0.0;
    double mom_t_star_l = 0.0, mom_t_star_r = 0.0;
    double psi_star_l = 0.0, psi_star_r = 0.0;
    double rho_star_l = 0.0, rho_star_r = 0.0;
    bool degenerate_contact = false;   ///< S* denominator collapsed; mean-velocity fallback used

    State star_l() const { return {pbeta_star_l, rho_star_l * s_star, mom_t_star_l, psi_star_l}; }
    State star_r() const { return {pbeta_star_r, rho_star_r * s_star, mom_t_star_r, psi_star_r}; }
};

struct FluctuationPair {
    State d_minus, d_plus;
};

/// Integral of m(s)/rho(s) over the segment path where both m and rho vary
/// linearly in s; closed form with a series fallback for small density jumps.
inline double path_avg_velocity(double rho_a, double m_a, double rho_b, double m_b) {
    if (!(rho_a > 0.0) || !(rho_b > 0.0))
        throw AdmissibilityError("path_avg_velocity: non-positive density");
    const double dr = rho_b - rho_a;
    const double dm = m_b - m_a;
    // the closed form cancels catastrophically for small density jumps; the
    // alternating series below is accurate to O(r^5) <= 1e-20 at the cutoff
    if (std::abs(dr) <= 1e-4 * std::max(rho_a, rho_b)) {
        const double r = dr / rho_a;
        return (dm / rho_a) * (0.5 - r * (1.0 / 3.0) + r * r * 0.25 - r * r * r * 0.2 +
                               r * r * r * r * (1.0 / 6.0)) +
               (m_a / rho_a) * (1.0 - r * 0.5 + r * r * (1.0 / 3.0) - r * r * r * 0.25 +
                                r * r * r * r * 0.2);
    }
    return dm / dr + (m_a * rho_b - m_b * rho_a) * std::log(rho_b / rho_a) / (dr * dr);
}

/// Davis estimates from the outermost eigenvalues of both states.
inline std::pair<double, double> wave_speeds(const State& ul, const State& ur, double kappa,
                                             const Params& p) {
    const WaveData wl = eigen_data(ul, kappa, p);
    const WaveData wr = eigen_data(ur, kappa, p);
    return {std::min(wl.lambda[0], wr.lambda[0]), std::max(wl.lambda[3], wr.lambda[3])};
}

/// Segment-path average of B_x applied to (ur - ul), over the full path.
inline State path_noncons_jump(const State& ul, const State& ur, double kappa, const Params& p) {
    const double rho_l = mix_rho(ul.psi, p);
    const double rho_r = mix_rho(ur.psi, p);
    const double u_avg = path_avg_velocity(rho_l, ul.mx, rho_r, ur.mx);
    const double dpsi = ur.psi - ul.psi;
    return {u_avg * ((ur.w - ul.w) - (p.rho1 - p.rho2) * dpsi),
            -p.sigma * kappa * dpsi, 0.0, 0.0};
}

inline StarStates star_states(const State& ul, const State& ur, double kappa, const Params& p) {
    StarStates st;
    const double rho_l = mix_rho(ul.psi, p);
    const double rho_r = mix_rho(ur.psi, p);
    if (!(rho_l > 0.0) || !(rho_r > 0.0))
        throw AdmissibilityError("star_states: non-positive input density");
    const double un_l = ul.mx / rho_l;
    const double un_r = ur.mx / rho_r;
    const double p_l = p.beta * ul.w;
    const double p_r = p.beta * ur.w;
    const double sk = p.sigma * kappa;

    auto [s_l, s_r] = wave_speeds(ul, ur, kappa, p);
    st.s_l = s_l;
    st.s_r = s_r;

    const double num = s_l * ul.mx - s_r * ur.mx + (rho_r * un_r * un_r + p_r) -
                       (rho_l * un_l * un_l + p_l) - sk * (ur.psi - ul.psi);
    const double den = s_l * rho_l - s_r * rho_r +
                       (p.rho1 - p.rho2) * (un_r * ur.psi - un_l * ul.psi);
    const double den_scale = std::abs(s_l) * rho_l + std::abs(s_r) * rho_r;
    if (std::abs(den) <= 1e-12 * den_scale) {
        st.s_star = 0.5 * (un_l + un_r);
        st.degenerate_contact = true;
    } else {
        st.s_star = num / den;
    }

    const double dl = s_l - st.s_star;
    const double dr_ = s_r - st.s_star;
    const double wave_scale = std::max(std::abs(s_l), std::abs(s_r));
    if (std::abs(dl) <= 1e-12 * wave_scale || std::abs(dr_) <= 1e-12 * wave_scale)
        throw SolverError("star_states: contact wave collapsed onto an outer wave");

    st.psi_star_l = (s_l * ul.psi - un_l * ul.psi) / dl;
    st.psi_star_r = (s_r * ur.psi - un_r * ur.psi) / dr_;
    st.mom_t_star_l = (s_l * ul.my - un_l * ul.my) / dl;
    st.mom_t_star_r = (s_r * ur.my - un_r * ur.my) / dr_;
    st.rho_star_l = mix_rho(st.psi_star_l, p);
    st.rho_star_r = mix_rho(st.psi_star_r, p);
    if (!(st.rho_star_l > 0.0) || !(st.rho_star_r > 0.0))
        throw AdmissibilityError("star_states: non-positive star-region density");

    // Star pressures: pressure-row jump condition across each outer wave with
    // the segment-path velocity average between the outer and star states.
    const double uavg_l = path_avg_velocity(rho_l, ul.mx, st.rho_star_l, st.rho_star_l * st.s_star);
    const double uavg_r = path_avg_velocity(rho_r, ur.mx, st.rho_star_r, st.rho_star_r * st.s_star);
    const double den_l = s_l - uavg_l;
    const double den_r = s_r - uavg_r;
    if (std::abs(den_l) <= 1e-12 * wave_scale || std::abs(den_r) <= 1e-12 * wave_scale)
        throw SolverError("star_states: outer wave collapsed onto the path-averaged velocity");
    st.pbeta_star_l =
        ul.w + (st.rho_star_l * (st.s_star - uavg_l) - rho_l * (un_l - uavg_l)) / den_l;
    st.pbeta_star_r =
        ur.w + (st.rho_star_r * (st.s_star - uavg_r) - rho_r * (un_r - uavg_r)) / den_r;
    return st;
}

/// Split fluctuations (contributions to the left and right cells).
inline FluctuationPair split_fluctuations(const State& ul, const State& ur, double kappa,
                                          const Params& p,
                                          const StarStates* precomputed = nullptr) {
    const StarStates st = precomputed ? *precomputed : star_states(ul, ur, kappa, p);
    const State wl = st.s_l * (st.star_l() - ul);
    const State wc = st.s_star * (st.star_r() - st.star_l());
    const State wr = st.s_r * (ur - st.star_r());

    FluctuationPair f;
    if (st.s_l >= 0.0) {
        f.d_plus = wl + wc + wr;
    } else if (st.s_star >= 0.0) {
        f.d_minus = wl;
        f.d_plus = wc + wr;
    } else if (st.s_r > 0.0) {
        f.d_minus = wl + wc;
        f.d_plus = wr;
    } else {
        f.d_minus = wl + wc + wr;
    }
    return f;
}

/// Generalized jump-condition residual across a discontinuity of speed xi
/// for the canonical path; a test oracle, not used in the time loop.
inline State grh_residual(const State& um, const State& up, double xi, double kappa,
                          const Params& p) {
    const State du = up - um;
    return flux_x(up, p) - flux_x(um, p) + path_noncons_jump(um, up, kappa, p) - xi * du;
}

} // namespace wc2p

#endif
