/** \file model.hpp
 * \brief State vectors, parameters, property mixing, frame rotation, and the
 *        eigenstructure of the inviscid subsystem.
 *
 * The conserved vector is U = (p/beta, rho*u, rho*v, psi). All operations
 * here are pure functions of their inputs.
 */
#ifndef WC2P_MODEL_HPP
#define WC2P_MODEL_HPP

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wc2p/geometry.hpp"

namespace wc2p {

class AdmissibilityError : public std::runtime_error {
public:
    explicit AdmissibilityError(const std::string& what) : std::runtime_error(what) {}
};

/// The radicand of the system sound speed went non-positive; the model is
/// hyperbolic only when beta dominates sigma*kappa*psi/rho.
class HyperbolicityError : public std::runtime_error {
public:
    explicit HyperbolicityError(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct Params {
    double beta = 0.0;      ///< artificial compressibility parameter, m^2/s^2
    double sigma = 0.0;     ///< surface tension coefficient, N/m
    Vec2 gravity;           ///< body acceleration, m/s^2
    double rho1 = 1.0;      ///< density of fluid 1 (psi = 1), kg/m^3
    double rho2 = 1.0;      ///< density of fluid 2 (psi = 0), kg/m^3
    double mu1 = 0.0;       ///< dynamic viscosity of fluid 1, kg/m-s
    double mu2 = 0.0;
    double d = 0.1;         ///< interface-width exponent in eps = h^(1-d)/2
    double delta = 10.0;    ///< normal-regularization constant
    double cfl = 0.9;

    void validate() const {
        if (!(beta > 0.0)) throw ConfigError("beta must be positive");
        if (!(rho1 > 0.0) || !(rho2 > 0.0)) throw ConfigError("phase densities must be positive");
        if (mu1 < 0.0 || mu2 < 0.0) throw ConfigError("viscosities must be non-negative");
        if (d < 0.0 || d > 0.1) throw ConfigError("d must lie in [0, 0.1]");
        if (!(cfl > 0.0 && cfl < 1.0)) throw ConfigError("cfl must lie in (0, 1)");
    }
};

/// Conserved 4-vector; in a rotated frame mx is the normal momentum and
/// my the tangential one.
struct State {
    double w = 0.0;     ///< p/beta
    double mx = 0.0;    ///< rho*u
    double my = 0.0;    ///< rho*v
    double psi = 0.0;

    State operator+(const State& o) const { return {w + o.w, mx + o.mx, my + o.my, psi + o.psi}; }
    State operator-(const State& o) const { return {w - o.w, mx - o.mx, my - o.my, psi - o.psi}; }
    State operator*(double s) const { return {w * s, mx * s, my * s, psi * s}; }
    State& operator+=(const State& o) { w += o.w; mx += o.mx; my += o.my; psi += o.psi; return *this; }
    State& operator-=(const State& o) { w -= o.w; mx -= o.mx; my -= o.my; psi -= o.psi; return *this; }

    double operator[](int k) const { return k == 0 ? w : k == 1 ? mx : k == 2 ? my : psi; }
    double& operator[](int k) {
        switch (k) { case 0: return w; case 1: return mx; case 2: return my; default: return psi; }
    }
};

inline State operator*(double s, const State& u) { return u * s; }

struct Primitive {
    double p = 0.0;
    double u = 0.0, v = 0.0;
    double psi = 0.0;
    double rho = 0.0;
    double mu = 0.0;
};

struct WaveData {
    double u_rho = 0.0;   ///< modified advection speed
    double a_s = 0.0;     ///< system sound speed
    std::array<double, 4> lambda{};
};

using Mat4 = std::array<std::array<double, 4>, 4>;

inline double mix_rho(double psi, const Params& p) { return p.rho1 * psi + p.rho2 * (1.0 - psi); }
inline double mix_mu(double psi, const Params& p) { return p.mu1 * psi + p.mu2 * (1.0 - psi); }

/// psi is deliberately not clamped; admissibility is rho > 0 only.
inline std::pair<double, double> mix_properties(double psi, const Params& p) {
    const double rho = mix_rho(psi, p);
    if (!(rho > 0.0))
        throw AdmissibilityError("mixture density is non-positive at psi = " + std::to_string(psi));
    return {rho, mix_mu(psi, p)};
}

inline Primitive primitive_from_conserved(const State& u, const Params& p) {
    const auto [rho, mu] = mix_properties(u.psi, p);
    return {p.beta * u.w, u.mx / rho, u.my / rho, u.psi, rho, mu};
}

inline State conserved_from_primitive(const Primitive& q, const Params& p) {
    return {q.p / p.beta, q.rho * q.u, q.rho * q.v, q.psi};
}

/// Rotate into the frame of unit normal n (momentum -> normal, tangential).
inline State rotate(const State& u, const Vec2& n) {
    return {u.w, n.x * u.mx + n.y * u.my, -n.y * u.mx + n.x * u.my, u.psi};
}

inline State unrotate(const State& u, const Vec2& n) {
    return {u.w, n.x * u.mx - n.y * u.my, n.y * u.mx + n.x * u.my, u.psi};
}

/// Convective flux in the x-direction of the current frame.
inline State flux_x(const State& u, const Params& p) {
    const double rho = mix_rho(u.psi, p);
    const double vx = u.mx / rho;
    return {u.mx, u.mx * vx + p.beta * u.w, u.my * vx, vx * u.psi};
}

inline State flux_y(const State& u, const Params& p) {
    const double rho = mix_rho(u.psi, p);
    const double vy = u.my / rho;
    return {u.my, u.mx * vy, u.my * vy + p.beta * u.w, vy * u.psi};
}

/// Non-conservative coefficient matrix B_x(U, kappa).
inline Mat4 b_x(const State& u, double kappa, const Params& p) {
    const double rho = mix_rho(u.psi, p);
    const double vx = u.mx / rho;
    Mat4 b{};
    b[0][0] = vx;
    b[0][3] = -(p.rho1 - p.rho2) * vx;
    b[1][3] = -p.sigma * kappa;
    return b;
}

inline Mat4 b_y(const State& u, double kappa, const Params& p) {
    const double rho = mix_rho(u.psi, p);
    const double vy = u.my / rho;
    Mat4 b{};
    b[0][0] = vy;
    b[0][3] = -(p.rho1 - p.rho2) * vy;
    b[2][3] = -p.sigma * kappa;
    return b;
}

inline State mat_vec(const Mat4& a, const State& u) {
    State r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i] += a[i][j] * u[j];
    return r;
}

/// Wave data of the rotated (normal-direction) quasi-linear system.
inline WaveData eigen_data(const State& u_hat, double kappa, const Params& p) {
    const double rho = mix_rho(u_hat.psi, p);
    if (!(rho > 0.0)) throw AdmissibilityError("eigen_data: non-positive density");
    const double un = u_hat.mx / rho;
    const double u_rho = (1.0 + p.rho2 / (2.0 * rho)) * un;
    const double radicand = (u_rho - un) * (u_rho - un) + p.beta - p.sigma * kappa * u_hat.psi / rho;
    if (!(radicand > 0.0))
        throw HyperbolicityError(
            "loss of hyperbolicity: beta = " + std::to_string(p.beta) +
            " does not dominate sigma*kappa*psi/rho = " +
            std::to_string(p.sigma * kappa * u_hat.psi / rho) + "; increase beta");
    const double a_s = std::sqrt(radicand);
    return {u_rho, a_s, {u_rho - a_s, un, un, u_rho + a_s}};
}

/// Quasi-linear coefficient matrix A = dF_c/dU + B_x of the rotated system.
/// Used as a test oracle for the eigenstructure and quadrature checks.
inline Mat4 quasilinear_matrix(const State& u_hat, double kappa, const Params& p) {
    const double rho = mix_rho(u_hat.psi, p);
    if (!(rho > 0.0)) throw AdmissibilityError("quasilinear_matrix: non-positive density");
    const double un = u_hat.mx / rho;
    const double ut = u_hat.my / rho;
    const double drho = p.rho1 - p.rho2;
    const double sk = p.sigma * kappa;
    Mat4 a{};
    a[0] = {un, 1.0, 0.0, -drho * un};
    a[1] = {p.beta, 2.0 * un, 0.0, -drho * un * un - sk};
    a[2] = {0.0, ut, un, -drho * un * ut};
    a[3] = {0.0, u_hat.psi / rho, 0.0, p.rho2 * un / rho};
    return a;
}

/// Right eigenvector columns of the quasi-linear matrix, in eigenvalue order
/// (lambda1, u, u, lambda4).
inline Mat4 right_eigenvectors(const State& u_hat, double kappa, const Params& p) {
    const double rho = mix_rho(u_hat.psi, p);
    const double un = u_hat.mx / rho;
    const double ut = u_hat.my / rho;
    const WaveData wd = eigen_data(u_hat, kappa, p);
    const double sk = p.sigma * kappa;
    Mat4 r{};
    r[0] = {1.0, sk / p.beta, 0.0, 1.0};
    r[1] = {wd.lambda[0] - p.rho2 * un / rho, (p.rho1 - p.rho2) * un, 0.0,
            wd.lambda[3] - p.rho2 * un / rho};
    r[2] = {ut, 0.0, 1.0, ut};
    r[3] = {u_hat.psi / rho, 1.0, 0.0, u_hat.psi / rho};
    return r;
}

} // namespace wc2p

#endif
