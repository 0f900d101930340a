/** \file bench.hpp
 * \brief Convergence-ladder and sweep helpers shared by the command-line
 *        driver and the validation suite.
 */
#ifndef WC2P_BENCH_HPP
#define WC2P_BENCH_HPP

#include <string>
#include <vector>

#include "wc2p/cases.hpp"

namespace wc2p {

/// Sampling interval the published convergence tables use for probe series;
/// probe errors are reported as the root-sum-square over samples at this
/// cadence, which equals the time-integral L2 norm divided by sqrt(cadence).
inline constexpr double probe_series_cadence = 0.01;

/// Benchmark error of a completed run, per case kind: static drop uses the
/// pressure-field norm, sloshing and capillary the probe series against their
/// references.
inline double case_error(const CaseConfig& c, const Mesh& mesh, const RunResult& res) {
    const double series_scale = 1.0 / std::sqrt(probe_series_cadence);
    switch (c.kind) {
        case CaseKind::static_drop:
            return drop_pressure_l2(res.snapshot.u, mesh, c.params, 1.0 / c.radius);
        case CaseKind::linear_sloshing: {
            const double x = c.probe_x.empty() ? 0.25 * c.length : c.probe_x.front();
            const SloshingOracle oracle(x, c);
            return series_scale * timeseries_l2(res.probes.at(0), oracle);
        }
        case CaseKind::capillary_wave: {
            const CapillaryOracle oracle(c);
            return series_scale * timeseries_l2(res.probes.at(0), oracle);
        }
        default:
            throw ConfigError("no scalar benchmark error defined for case " +
                              std::string(to_string(c.kind)));
    }
}

struct LadderRow {
    int nx = 0, ny = 0;
    double h = 0.0;
    double error = 0.0;
};

/// Run the refinement ladder obtained by scaling the configured mesh to each
/// requested nx (the aspect ratio is preserved).
template <class Progress>
inline std::vector<LadderRow> run_ladder(const CaseConfig& base, const std::vector<int>& levels,
                                         Progress&& progress) {
    if (base.mesh.kind != "cartesian" && base.mesh.kind != "triangular")
        throw ConfigError("convergence ladders need a generated (cartesian/triangular) mesh");
    std::vector<LadderRow> rows;
    for (int nx : levels) {
        if (nx < 1) throw ConfigError("ladder level must be positive");
        CaseConfig c = base;
        c.mesh.nx = nx;
        c.mesh.ny = std::max(1, static_cast<int>(std::lround(
                                    double(nx) * base.mesh.ny / base.mesh.nx)));
        const Mesh mesh = build_case_mesh(c);
        const RunResult res = run_simulation(c, mesh);
        rows.push_back({c.mesh.nx, c.mesh.ny, mesh.h_avg, case_error(c, mesh, res)});
        progress(rows.back(), res);
    }
    return rows;
}

inline std::vector<LadderRow> run_ladder(const CaseConfig& base, const std::vector<int>& levels) {
    return run_ladder(base, levels, [](const LadderRow&, const RunResult&) {});
}

inline double ladder_order(const std::vector<LadderRow>& rows) {
    std::vector<double> h, e;
    for (const auto& r : rows) {
        h.push_back(r.h);
        e.push_back(r.error);
    }
    return effective_order(h, e);
}

/// Fitted RTI growth rate of a completed run, over the default amplitude
/// window [2 a0, 10 a0].
inline GrowthFit rti_fit(const CaseConfig& c, const RunResult& res) {
    const double a0 = std::abs(c.amplitude0);
    return fit_growth_rate(res.probes.at(0), 2.0 * a0, 10.0 * a0);
}

} // namespace wc2p

#endif
