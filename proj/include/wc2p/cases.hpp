/** \file cases.hpp
 * \brief Benchmark definitions: configuration, mesh construction, field
 *        initialization, analytical reference solutions, probes, error
 *        metrics, and the simulation harness that ties them together.
 */
#ifndef WC2P_CASES_HPP
#define WC2P_CASES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wc2p/mesh.hpp"
#include "wc2p/meshgen.hpp"
#include "wc2p/model.hpp"
#include "wc2p/specfun.hpp"
#include "wc2p/stepper.hpp"

namespace wc2p {

class ProbeError : public std::runtime_error {
public:
    explicit ProbeError(const std::string& what) : std::runtime_error(what) {}
};

enum class CaseKind { static_drop, linear_sloshing, capillary_wave, rayleigh_taylor, custom };
enum class PressureInit { zero, hydrostatic, exact_drop };
enum class SurfaceTensionMode { path_conservative, csf_source };

inline const char* to_string(CaseKind k) {
    switch (k) {
        case CaseKind::static_drop: return "static_drop";
        case CaseKind::linear_sloshing: return "linear_sloshing";
        case CaseKind::capillary_wave: return "capillary_wave";
        case CaseKind::rayleigh_taylor: return "rayleigh_taylor";
        case CaseKind::custom: return "custom";
    }
    return "?";
}

struct MeshSpec {
    std::string kind = "cartesian";   ///< cartesian | triangular | graded | file
    int nx = 0, ny = 0;
    double jitter = 0.0;
    std::uint64_t seed = 7;
    double h_fine = 0.0, h_coarse = 0.0, band = 0.0;   ///< graded generator
    std::string path;                                  ///< file import
};

struct CaseConfig {
    CaseKind kind = CaseKind::custom;
    double length = 0.0;        ///< L
    double height = 0.0;        ///< H (tank height; derived for other cases)
    double fill_height = 0.0;   ///< liquid column height (sloshing)
    double radius = 0.0;        ///< drop radius
    double amplitude0 = 0.0;    ///< initial interface perturbation amplitude
    double wavenumber = 0.0;    ///< k of the initial perturbation (RTI)
    std::optional<double> phi_s;   ///< RTI stability parameter; overrides sigma when set
    Params params;
    MeshSpec mesh;
    double t_end = 0.0;
    int order = 1;
    SurfaceTensionMode st_mode = SurfaceTensionMode::path_conservative;
    std::optional<double> kappa_override;
    PressureInit pressure_init = PressureInit::zero;
    bool regularization = true;
    std::vector<double> probe_x;
    double probe_dt = 0.0;      ///< probe cadence in seconds; 0 records every step

    void validate() const {
        params.validate();
        if (!(t_end >= 0.0)) throw ConfigError("t_end must be non-negative");
        if (order != 1 && order != 2) throw ConfigError("order must be 1 or 2");
        switch (kind) {
            case CaseKind::static_drop:
                if (!(length > 0.0) || !(radius > 0.0)) throw ConfigError("static_drop needs length and radius");
                if (!(radius < 0.5 * length)) throw ConfigError("drop does not fit inside the domain");
                break;
            case CaseKind::linear_sloshing:
                if (!(length > 0.0) || !(height > 0.0)) throw ConfigError("linear_sloshing needs length and height");
                if (!(fill_height > 0.0 && fill_height < height))
                    throw ConfigError("fill_height must lie inside the tank");
                break;
            case CaseKind::capillary_wave:
                if (!(length > 0.0)) throw ConfigError("capillary_wave needs length");
                if (!(std::abs(amplitude0) < 0.5 * length))
                    throw ConfigError("perturbation amplitude exceeds the domain");
                break;
            case CaseKind::rayleigh_taylor:
                if (!(length > 0.0) || !(wavenumber > 0.0))
                    throw ConfigError("rayleigh_taylor needs length and wavenumber");
                if (!(std::abs(amplitude0) < length))
                    throw ConfigError("perturbation amplitude exceeds the domain");
                break;
            case CaseKind::custom:
                if (!(length > 0.0) || !(height > 0.0)) throw ConfigError("custom needs length and height");
                break;
        }
    }

    /// Physical domain extent (origin is always (0,0)).
    std::pair<double, double> domain() const {
        switch (kind) {
            case CaseKind::static_drop: return {length, length};
            case CaseKind::linear_sloshing: return {length, height};
            case CaseKind::capillary_wave: return {length, length};
            case CaseKind::rayleigh_taylor: return {0.5 * length, 3.0 * length};
            case CaseKind::custom: return {length, height};
        }
        return {length, height};
    }
};

/// Paper setups as ready-made configurations.
inline CaseConfig make_case(CaseKind kind) {
    CaseConfig c;
    c.kind = kind;
    switch (kind) {
        case CaseKind::static_drop:
            c.length = 8.0;
            c.radius = 2.0;
            c.params.beta = 1e4;
            c.params.sigma = 73.0;
            c.params.rho1 = c.params.rho2 = 1.0;
            c.t_end = 5.0;
            c.order = 1;
            c.regularization = false;
            c.mesh.nx = c.mesh.ny = 32;
            break;
        case CaseKind::linear_sloshing:
            c.length = 1.0;
            c.height = 2.25;
            c.fill_height = 1.0;
            c.params.beta = 1e3;
            c.params.rho1 = 1000.0;
            c.params.rho2 = 1.0;
            c.params.gravity = {-9.81e-2, -9.81};
            c.t_end = 4.0;
            c.order = 2;
            c.pressure_init = PressureInit::hydrostatic;
            c.probe_x = {0.25};
            c.probe_dt = 2e-3;
            c.mesh.nx = 32;
            c.mesh.ny = 72;
            break;
        case CaseKind::capillary_wave:
            c.length = 1.0;
            c.amplitude0 = 0.01;
            c.params.beta = 50.0;
            c.params.sigma = 1.0;
            c.params.rho1 = c.params.rho2 = 18.3;
            c.params.mu1 = c.params.mu2 = 7.8e-2;
            c.t_end = 9.0;
            c.order = 2;
            c.probe_x = {0.5};
            c.probe_dt = 2e-3;
            c.mesh.nx = c.mesh.ny = 32;
            break;
        case CaseKind::rayleigh_taylor:
            c.length = 6.0 * std::numbers::pi / 5.0;
            c.wavenumber = 5.0 / 3.0;
            c.amplitude0 = 0.035;
            c.params.beta = 1e3;
            c.params.rho1 = 1.2;
            c.params.rho2 = 0.3;
            c.params.gravity = {0.0, -1.0};
            c.t_end = 10.0;
            c.order = 2;
            c.pressure_init = PressureInit::hydrostatic;
            c.probe_dt = 5e-3;
            c.mesh.nx = 64;
            c.mesh.ny = 384;
            break;
        case CaseKind::custom: break;
    }
    return c;
}

/// Surface tension of the RTI case from the stability parameter phi_s.
inline double rti_sigma_from_phi(double phi_s, const CaseConfig& c) {
    const double rsum = c.params.rho1 + c.params.rho2;
    const double atwood = (c.params.rho1 - c.params.rho2) / rsum;
    return phi_s * atwood * std::abs(c.params.gravity.y) * rsum /
           (c.wavenumber * c.wavenumber);
}

/// Resolve derived quantities (currently: sigma from phi_s) after edits.
inline void finalize_config(CaseConfig& c) {
    if (c.phi_s) {
        if (c.kind != CaseKind::rayleigh_taylor)
            throw ConfigError("phi_s applies to the rayleigh_taylor case only");
        c.params.sigma = rti_sigma_from_phi(*c.phi_s, c);
    }
}

// ---------------------------------------------------------------------------
// Mesh construction

inline Mesh build_case_mesh(const CaseConfig& c) {
    const auto [lx, ly] = c.domain();
    const bool periodic_x = c.kind == CaseKind::capillary_wave;
    if (c.mesh.kind == "cartesian") {
        if (c.mesh.nx < 1 || c.mesh.ny < 1) throw ConfigError("mesh nx/ny must be positive");
        CartesianBoundaries bc;
        if (periodic_x) bc.left = bc.right = BoundaryKind::periodic;
        return build_cartesian(c.mesh.nx, c.mesh.ny, lx, ly, {0.0, 0.0}, bc);
    }
    SideNames sides;
    if (periodic_x) sides.left = sides.right = "periodic_x";
    if (c.mesh.kind == "triangular") {
        if (c.mesh.nx < 1 || c.mesh.ny < 1) throw ConfigError("mesh nx/ny must be positive");
        return import_mesh(triangular_mesh_doc(c.mesh.nx, c.mesh.ny, lx, ly, {0.0, 0.0}, sides,
                                               c.mesh.jitter, c.mesh.seed));
    }
    if (c.mesh.kind == "graded") {
        if (!(c.mesh.h_fine > 0.0) || !(c.mesh.h_coarse > 0.0) || !(c.mesh.band > 0.0))
            throw ConfigError("graded mesh needs h_fine, h_coarse and band");
        return import_mesh(graded_triangular_mesh_doc(lx, ly, c.fill_height, c.mesh.h_fine,
                                                      c.mesh.h_coarse, c.mesh.band, sides));
    }
    if (c.mesh.kind == "file") {
        std::ifstream in(c.mesh.path);
        if (!in) throw ConfigError("cannot open mesh file '" + c.mesh.path + "'");
        std::ostringstream text;
        text << in.rdbuf();
        return import_mesh(text.str());
    }
    throw ConfigError("unknown mesh kind '" + c.mesh.kind + "'");
}

// ---------------------------------------------------------------------------
// Initialization

/// Signed distance-like level function of the case's initial interface,
/// positive inside fluid 1.
inline double initial_phi(const CaseConfig& c, const Vec2& x) {
    switch (c.kind) {
        case CaseKind::static_drop: {
            const Vec2 ctr{0.5 * c.length, 0.5 * c.length};
            return c.radius - (x - ctr).norm();
        }
        case CaseKind::linear_sloshing:
            return c.fill_height - x.y;   // water (fluid 1) below
        case CaseKind::capillary_wave:
            return 0.5 * c.length -
                   c.amplitude0 * std::cos(2.0 * std::numbers::pi * x.x / c.length) - x.y;
        case CaseKind::rayleigh_taylor:   // heavy fluid 1 on top
            return x.y - (2.0 * c.length + c.amplitude0 * std::cos(c.wavenumber * x.x));
        case CaseKind::custom:
            return c.fill_height - x.y;
    }
    return 0.0;
}

/// Initial interface elevation above x (the 0.5 level of the tanh profile).
inline double initial_interface_y(const CaseConfig& c, double x) {
    switch (c.kind) {
        case CaseKind::linear_sloshing: return c.fill_height;
        case CaseKind::capillary_wave:
            return 0.5 * c.length -
                   c.amplitude0 * std::cos(2.0 * std::numbers::pi * x / c.length);
        case CaseKind::rayleigh_taylor:
            return 2.0 * c.length + c.amplitude0 * std::cos(c.wavenumber * x);
        default: throw ConfigError("case has no single-valued interface elevation");
    }
}

inline double exact_drop_pressure(double psi, double p_min, double psi_min, double psi_max,
                                  double delta_p) {
    return p_min + (psi - psi_min) / (psi_max - psi_min) * delta_p;
}

namespace detail {
/// ln(cosh(s)) without overflow.
inline double lncosh(double s) {
    const double a = std::abs(s);
    return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}
} // namespace detail

/// Hydrostatic pressure at (x,y): column integral of rho(psi) |g_y| from the
/// top boundary (p = 0 there), with psi the analytic initial tanh profile.
/// Closed form of the tanh integral; valid for a single-valued interface.
inline double hydrostatic_pressure(const CaseConfig& c, const Vec2& x, double eps) {
    const double ytop = c.domain().second;
    const double yint = initial_interface_y(c, x.x);
    const double gy = std::abs(c.params.gravity.y);
    // integral of psi over [y, ytop]; sign of the profile depends on which
    // fluid sits on top
    const bool fluid1_above = c.kind == CaseKind::rayleigh_taylor;
    auto psi_int = [&](double y) {
        // antiderivative of 1/2 (1 + tanh(+-(y' - yint)/(2 eps)))
        const double t = detail::lncosh((y - yint) / (2.0 * eps)) * eps;
        return fluid1_above ? 0.5 * y + t : 0.5 * y - t;
    };
    const double ipsi = psi_int(ytop) - psi_int(x.y);
    const double irho = c.params.rho2 * (ytop - x.y) + (c.params.rho1 - c.params.rho2) * ipsi;
    return gy * irho;
}

/// Cell-centred initial state: tanh phase field, zero velocity, and pressure
/// per the configured initialization.
inline FieldSnapshot init_case(const CaseConfig& c, const Mesh& mesh) {
    c.validate();
    const auto [lx, ly] = c.domain();
    (void)lx;
    (void)ly;
    const double eps = 0.5 * std::pow(mesh.h_avg, 1.0 - c.params.d);
    FieldSnapshot s;
    s.u.resize(mesh.n_cells());
    const double kappa_init = c.kappa_override.value_or(c.radius > 0.0 ? 1.0 / c.radius : 0.0);
    for (int i = 0; i < mesh.n_cells(); ++i) {
        const Vec2& x = mesh.cells[i].centroid;
        const double psi = 0.5 * (std::tanh(initial_phi(c, x) / (2.0 * eps)) + 1.0);
        double p = 0.0;
        switch (c.pressure_init) {
            case PressureInit::zero: break;
            case PressureInit::exact_drop:
                // analytic bounds psi in [0,1], p_min = 0: p = sigma kappa psi
                p = c.params.sigma * kappa_init * psi;
                break;
            case PressureInit::hydrostatic:
                p = hydrostatic_pressure(c, x, eps);
                break;
        }
        s.u[i] = {p / c.params.beta, 0.0, 0.0, psi};
    }
    return s;
}

inline SolverMode solver_mode(const CaseConfig& c) {
    SolverMode m;
    m.order = c.order;
    m.csf_source = c.st_mode == SurfaceTensionMode::csf_source;
    m.regularization = c.regularization;
    m.kappa_override = c.kappa_override;
    return m;
}

// ---------------------------------------------------------------------------
// Probes

struct TimeSeries {
    std::vector<double> t, v;
    void push(double time, double value) {
        if (!t.empty() && !(time > t.back()))
            throw ProbeError("time series samples must be strictly increasing");
        t.push_back(time);
        v.push_back(value);
    }
};

/// y of the psi = 0.5 crossing along the centroid column nearest x_probe;
/// with several crossings, the one closest to prev wins.
inline double interface_elevation(const std::vector<State>& u, const Mesh& mesh, double x_probe,
                                  double prev) {
    double x_line = 0.0, best = std::numeric_limits<double>::infinity();
    for (const auto& cell : mesh.cells) {
        const double d = std::abs(cell.centroid.x - x_probe);
        if (d < best) {
            best = d;
            x_line = cell.centroid.x;
        }
    }
    std::vector<std::pair<double, double>> col;   // (y, psi)
    const double half = 0.5 * mesh.h_avg;
    for (int i = 0; i < mesh.n_cells(); ++i)
        if (std::abs(mesh.cells[i].centroid.x - x_line) <= half)
            col.emplace_back(mesh.cells[i].centroid.y, u[i].psi);
    std::sort(col.begin(), col.end());

    double elev = 0.0;
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < col.size(); ++k) {
        const double a = col[k].second - 0.5, b = col[k + 1].second - 0.5;
        if (a == b || a * b > 0.0) continue;
        const double y = col[k].first + (0.5 - col[k].second) * (col[k + 1].first - col[k].first) /
                                            (col[k + 1].second - col[k].second);
        if (std::abs(y - prev) < dist) {
            dist = std::abs(y - prev);
            elev = y;
        }
    }
    if (!std::isfinite(dist))
        throw ProbeError("no interface crossing on the column at x = " + std::to_string(x_line));
    return elev;
}

// ---------------------------------------------------------------------------
// Analytical references

/// Linearized-potential-theory sloshing elevation at a fixed station.
/// Mode data are precomputed once; evaluation is a cosine sum over time.
class SloshingOracle {
public:
    SloshingOracle(double x, const CaseConfig& c) {
        const double l = c.length, h = c.fill_height, hh = c.height - c.fill_height;
        const double gy = std::abs(c.params.gravity.y);
        const double ratio = c.params.gravity.x / c.params.gravity.y;
        auto coth = [](double s) { return 1.0 / std::tanh(s); };
        for (int m = 1;; m += 2) {
            const double k = m * std::numbers::pi / l;
            const double amp = 4.0 / (k * k * l);
            if (amp < 1e-12 * l) break;
            const double w2 = gy * k * (c.params.rho1 - c.params.rho2) /
                              (c.params.rho1 * coth(k * h) + c.params.rho2 * coth(k * hh));
            coef_.push_back(ratio * amp * std::cos(k * (x - l)));
            omega_.push_back(std::sqrt(w2));
        }
        // static offset consistent with the truncated mode sum: the series
        // telescopes the sawtooth, so this equals ratio*(l/2 - x) up to the
        // truncation tail and makes eta(x, 0) vanish identically
        for (const double c_m : coef_) base_ -= c_m;
    }

    double operator()(double t) const {
        double s = base_;
        for (std::size_t m = 0; m < coef_.size(); ++m) s += coef_[m] * std::cos(omega_[m] * t);
        return s;
    }

private:
    std::vector<double> coef_, omega_;
    double base_ = 0.0;
};

inline double sloshing_eta_exact(double x, double t, const CaseConfig& c) {
    return SloshingOracle(x, c)(t);
}

/// Initial-value solution for the amplitude of a small viscous capillary wave
/// between two fluids of equal density and viscosity (the benchmark setup).
class CapillaryOracle {
public:
    explicit CapillaryOracle(const CaseConfig& c) {
        if (c.params.rho1 != c.params.rho2 || c.params.mu1 != c.params.mu2)
            throw OracleError("capillary reference requires equal densities and viscosities");
        a0_ = std::abs(c.amplitude0);
        const double k = 2.0 * std::numbers::pi / c.length;
        const double rsum = c.params.rho1 + c.params.rho2;
        w0sq_ = c.params.sigma * k * k * k / rsum;
        eps_ = (c.params.mu1 / c.params.rho1) * k * k;
        const double b = c.params.rho1 * c.params.rho2 / (rsum * rsum);
        const double se = std::sqrt(eps_);
        roots_ = polynomial_roots({{(1.0 - 4.0 * b) * eps_ * eps_ + w0sq_, 0.0},
                                   {4.0 * (1.0 - 3.0 * b) * eps_ * se, 0.0},
                                   {2.0 * (1.0 - 6.0 * b) * eps_, 0.0},
                                   {-4.0 * b * se, 0.0},
                                   {1.0, 0.0}});
        head_ = 4.0 * (1.0 - 4.0 * b) * eps_ * eps_ /
                (8.0 * (1.0 - 4.0 * b) * eps_ * eps_ + w0sq_);
    }

    double operator()(double t) const {
        std::complex<double> sum = 0.0;
        for (int i = 0; i < 4; ++i) {
            std::complex<double> zprod = 1.0;
            for (int j = 0; j < 4; ++j)
                if (j != i) zprod *= roots_[j] - roots_[i];
            sum += (roots_[i] / zprod) * (w0sq_ * a0_ / (roots_[i] * roots_[i] - eps_)) *
                   std::exp(-eps_ * t) * erfcx(roots_[i] * std::sqrt(t));
        }
        return head_ * a0_ * std::erfc(std::sqrt(eps_ * t)) + sum.real();
    }

private:
    double a0_ = 0.0, w0sq_ = 0.0, eps_ = 0.0, head_ = 0.0;
    std::vector<std::complex<double>> roots_;
};

inline double capillary_amplitude_exact(double t, const CaseConfig& c) {
    return CapillaryOracle(c)(t);
}

/// Linear-theory growth rate of the RTI perturbation; empty when surface
/// tension stabilizes the interface.
inline std::optional<double> rti_growth_theory(const CaseConfig& c) {
    const double rsum = c.params.rho1 + c.params.rho2;
    const double atwood = (c.params.rho1 - c.params.rho2) / rsum;
    const double gy = std::abs(c.params.gravity.y);
    const double k = c.wavenumber;
    const double n2 = k * gy * (atwood - k * k * c.params.sigma / (gy * rsum));
    if (!(n2 > 0.0)) return std::nullopt;
    return std::sqrt(n2);
}

// ---------------------------------------------------------------------------
// Error metrics

inline double vmax(const std::vector<State>& u, const Params& p) {
    double m = 0.0;
    for (const auto& s : u) {
        const double rho = mix_rho(s.psi, p);
        m = std::max(m, std::sqrt(s.mx * s.mx + s.my * s.my) / rho);
    }
    return m;
}

/// Normalized pressure L2 error of the static drop: the reference field is the
/// diffused linear profile with p_min, psi bounds taken from the numerical
/// solution and the jump sigma*kappa from the Young-Laplace law.
inline double drop_pressure_l2(const std::vector<State>& u, const Mesh& mesh, const Params& p,
                               double kappa_exact) {
    double psi_min = u[0].psi, psi_max = u[0].psi, p_min = p.beta * u[0].w;
    for (const auto& s : u) {
        psi_min = std::min(psi_min, s.psi);
        psi_max = std::max(psi_max, s.psi);
        p_min = std::min(p_min, p.beta * s.w);
    }
    const double dp = p.sigma * kappa_exact;
    double acc = 0.0;
    for (int i = 0; i < mesh.n_cells(); ++i) {
        const double pe = exact_drop_pressure(u[i].psi, p_min, psi_min, psi_max, dp);
        const double e = p.beta * u[i].w - pe;
        acc += e * e * mesh.cells[i].area;
    }
    return std::sqrt(acc) / dp;
}

/// Time-weighted L2 norm of a sampled series against a reference function.
template <class F>
inline double timeseries_l2(const TimeSeries& s, F&& exact) {
    if (s.t.size() < 2) throw ProbeError("time series too short for an error norm");
    double acc = 0.0;
    for (std::size_t k = 0; k < s.t.size(); ++k) {
        const double t0 = k == 0 ? s.t.front() : s.t[k - 1];
        const double t1 = k + 1 == s.t.size() ? s.t.back() : s.t[k + 1];
        const double w = 0.5 * (t1 - t0);
        const double e = s.v[k] - exact(s.t[k]);
        acc += e * e * w;
    }
    return std::sqrt(acc);
}

struct GrowthFit {
    double n = 0.0;        ///< fitted exponential rate
    double r2 = 0.0;
    double t_begin = 0.0, t_end = 0.0;
    int count = 0;
};

/// Least-squares slope of ln(amplitude) vs t over the window amplitude in
/// [lo, hi].
inline GrowthFit fit_growth_rate(const TimeSeries& s, double lo, double hi) {
    GrowthFit fit;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    fit.t_begin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < s.t.size(); ++k) {
        if (!(s.v[k] >= lo && s.v[k] <= hi)) continue;
        const double x = s.t[k], y = std::log(s.v[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
        ++fit.count;
        fit.t_begin = std::min(fit.t_begin, x);
        fit.t_end = std::max(fit.t_end, x);
    }
    if (fit.count < 2) throw ProbeError("growth-rate window contains fewer than 2 samples");
    const double n = fit.count;
    const double det = n * sxx - sx * sx;
    fit.n = (n * sxy - sx * sy) / det;
    const double ss_res = syy - sy * sy / n - fit.n * (sxy - sx * sy / n);
    const double ss_tot = syy - sy * sy / n;
    fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

/// Regression slope of ln(error) vs ln(h).
inline double effective_order(const std::vector<double>& h, const std::vector<double>& errors) {
    if (h.size() != errors.size() || h.size() < 2)
        throw ProbeError("effective_order needs matching lists of at least 2 levels");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < h.size(); ++k) {
        if (!(errors[k] > 0.0) || !(h[k] > 0.0))
            throw ProbeError("effective_order requires positive errors and mesh sizes");
        const double x = std::log(h[k]), y = std::log(errors[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(h.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---------------------------------------------------------------------------
// Run harness

struct RunResult {
    FieldSnapshot snapshot;
    TimeSeries vmax_series;               ///< (t, |v|max)
    std::vector<TimeSeries> probes;       ///< per probe station (case semantics)
    double vmax_over_time = 0.0;
    long long steps = 0;
};

/// Probe value recorded for the case: sloshing records eta = elevation - fill
/// height; capillary and RTI record the perturbation amplitude at the station.
inline double probe_value(const CaseConfig& c, const std::vector<State>& u, const Mesh& mesh,
                          double x, double& prev_elev) {
    const double elev = interface_elevation(u, mesh, x, prev_elev);
    prev_elev = elev;
    switch (c.kind) {
        case CaseKind::linear_sloshing: return elev - c.fill_height;
        case CaseKind::capillary_wave: {
            // signed modal amplitude: deflection divided by the standing-wave
            // shape -cos(kx) of the initial perturbation at the station
            const double shape = -std::cos(2.0 * std::numbers::pi / c.length * x);
            if (std::abs(shape) < 0.1)
                throw ProbeError("capillary probe station sits near a node of the wave");
            return (elev - 0.5 * c.length) / shape;
        }
        case CaseKind::rayleigh_taylor: return std::abs(elev - 2.0 * c.length);
        default: return elev;
    }
}

/// March a configured case to t_end, recording |v|max and interface probes.
inline RunResult run_simulation(const CaseConfig& c, const Mesh& mesh) {
    c.validate();
    Solver solver(mesh, c.params, solver_mode(c));
    RunResult res;
    res.snapshot = init_case(c, mesh);

    std::vector<double> stations = c.probe_x;
    if (c.kind == CaseKind::rayleigh_taylor && stations.empty())
        stations.push_back(c.domain().first);   // line of symmetry
    std::vector<double> prev(stations.size());
    for (std::size_t k = 0; k < stations.size(); ++k)
        prev[k] = initial_interface_y(c, stations[k]);
    res.probes.resize(stations.size());

    double next_sample = 0.0;
    auto observe = [&](const FieldSnapshot& s) {
        const bool due = c.probe_dt <= 0.0 || s.time >= next_sample - 1e-12 ||
                         s.time >= c.t_end - 1e-12 * std::max(c.t_end, 1.0);
        if (!due) return;
        if (c.probe_dt > 0.0)
            while (next_sample <= s.time + 1e-12) next_sample += c.probe_dt;
        const double vm = vmax(s.u, c.params);
        res.vmax_series.push(s.time, vm);
        res.vmax_over_time = std::max(res.vmax_over_time, vm);
        for (std::size_t k = 0; k < stations.size(); ++k)
            res.probes[k].push(s.time, probe_value(c, s.u, mesh, stations[k], prev[k]));
    };

    solver.advance(res.snapshot, c.t_end, observe);
    res.steps = res.snapshot.step;
    return res;
}

} // namespace wc2p

#endif
