/** \file wc2p.cpp
 * \brief Command-line driver: single runs, refinement ladders, the RTI
 *        stability sweep, the surface-tension mode comparison, and mesh
 *        validation.
 *
 * Exit status: 0 on success, 2 on configuration errors (bad flags, bad
 * config/mesh documents), 3 on solver aborts (hyperbolicity loss,
 * inadmissible states, Riemann-solver failures).
 */
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wc2p/bench.hpp"
#include "wc2p/cases.hpp"
#include "wc2p/config.hpp"
#include "wc2p/io.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw wc2p::ConfigError("cannot open '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

/// WC2P_THREADS selects the worker count; 0 (the default) is the serial
/// reference mode. All values currently execute the serial reference path,
/// so results are identical for every setting.
int requested_threads() {
    const char* env = std::getenv("WC2P_THREADS");
    if (env == nullptr || *env == '\0') return 0;
    try {
        std::size_t pos = 0;
        const int n = std::stoi(env, &pos);
        if (env[pos] != '\0' || n < 0) throw std::invalid_argument(env);
        return n;
    } catch (const std::exception&) {
        throw wc2p::ConfigError(std::string("WC2P_THREADS: expected a non-negative integer, got '") +
                                env + "'");
    }
}

struct TimedRun {
    wc2p::RunResult result;
    double wall_seconds = 0.0;
};

TimedRun timed_run(const wc2p::CaseConfig& c, const wc2p::Mesh& mesh) {
    const auto t0 = std::chrono::steady_clock::now();
    TimedRun out;
    out.result = wc2p::run_simulation(c, mesh);
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
    const std::string config_text = read_file(config_path);
    const wc2p::CaseConfig c = wc2p::parse_config(config_text);
    const wc2p::Mesh mesh = wc2p::build_case_mesh(c);
    std::filesystem::create_directories(out_dir);

    std::printf("case %s: %d cells, %d faces, h = %.6g, threads = %d\n",
                wc2p::to_string(c.kind), mesh.n_cells(), mesh.n_faces(), mesh.h_avg,
                requested_threads());
    const TimedRun run = timed_run(c, mesh);
    const auto& res = run.result;

    const wc2p::Solver solver(mesh, c.params, wc2p::solver_mode(c));
    const wc2p::CurvatureField curv = solver.curvature_of(res.snapshot.u);

    const std::filesystem::path dir(out_dir);
    wc2p::write_file((dir / "manifest.json").string(),
                     wc2p::render_manifest(config_text, mesh, res.snapshot.diag, res.steps,
                                           run.wall_seconds));
    wc2p::write_vtk_snapshot(res.snapshot.u, mesh, c.params, curv.kappa_cell,
                             (dir / "final.vtk").string());
    wc2p::write_timeseries(res.vmax_series, (dir / "vmax.csv").string());
    for (std::size_t k = 0; k < res.probes.size(); ++k)
        wc2p::write_timeseries(res.probes[k],
                               (dir / ("probe_" + std::to_string(k) + ".csv")).string());

    std::printf("t = %.6g after %lld steps in %.2f s, max |v| = %.6g\n", res.snapshot.time,
                res.steps, run.wall_seconds, res.vmax_over_time);
    std::printf("diagnostics: %lld first-order fallbacks, %lld degenerate contacts, min dt = %.6g\n",
                res.snapshot.diag.order1_fallbacks, res.snapshot.diag.degenerate_contacts,
                res.snapshot.diag.min_dt);
    std::printf("wrote manifest.json, final.vtk, vmax.csv and %zu probe series to %s\n",
                res.probes.size(), out_dir.c_str());
    return 0;
}

void print_ladder(const std::vector<wc2p::LadderRow>& rows) {
    std::printf("%8s %12s %14s %10s\n", "mesh", "h", "error", "order");
    for (std::size_t k = 0; k < rows.size(); ++k) {
        std::string size = std::to_string(rows[k].nx) + "x" + std::to_string(rows[k].ny);
        if (k == 0)
            std::printf("%8s %12.6g %14.6g %10s\n", size.c_str(), rows[k].h, rows[k].error, "-");
        else
            std::printf("%8s %12.6g %14.6g %10.3f\n", size.c_str(), rows[k].h, rows[k].error,
                        std::log(rows[k - 1].error / rows[k].error) /
                            std::log(rows[k - 1].h / rows[k].h));
    }
}

int cmd_convergence(const std::string& config_path, const std::vector<int>& levels) {
    if (levels.size() < 2) throw wc2p::ConfigError("--levels needs at least two mesh sizes");
    const wc2p::CaseConfig c = wc2p::parse_config(read_file(config_path));
    const auto rows = wc2p::run_ladder(c, levels, [](const wc2p::LadderRow& r, const wc2p::RunResult& res) {
        std::printf("  %dx%d done: %lld steps, error %.6g\n", r.nx, r.ny, res.steps, r.error);
        std::fflush(stdout);
    });
    print_ladder(rows);
    std::printf("effective order: %.3f\n", wc2p::ladder_order(rows));
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::vector<double>& phi_values) {
    if (phi_values.empty()) throw wc2p::ConfigError("--phi-s needs at least one value");
    wc2p::CaseConfig base = wc2p::parse_config(read_file(config_path));
    if (base.kind != wc2p::CaseKind::rayleigh_taylor)
        throw wc2p::ConfigError("sweep applies to the rayleigh_taylor case only");

    std::printf("%8s %12s %12s %12s %10s %8s\n", "phi_s", "sigma", "fitted n", "theory n",
                "rel diff", "R^2");
    for (double phi : phi_values) {
        wc2p::CaseConfig c = base;
        c.phi_s = phi;
        wc2p::finalize_config(c);
        const wc2p::Mesh mesh = wc2p::build_case_mesh(c);
        const TimedRun run = timed_run(c, mesh);
        const wc2p::GrowthFit fit = wc2p::rti_fit(c, run.result);
        const auto theory = wc2p::rti_growth_theory(c);
        if (theory)
            std::printf("%8.3g %12.6g %12.6g %12.6g %9.2f%% %8.4f\n", phi, c.params.sigma, fit.n,
                        *theory, 100.0 * (fit.n - *theory) / *theory, fit.r2);
        else
            std::printf("%8.3g %12.6g %12.6g %12s %10s %8.4f\n", phi, c.params.sigma, fit.n,
                        "stable", "-", fit.r2);
        std::fflush(stdout);
    }
    return 0;
}

int cmd_compare(const std::string& config_path, std::vector<int> levels) {
    wc2p::CaseConfig base = wc2p::parse_config(read_file(config_path));
    if (levels.empty()) levels = {base.mesh.nx, 2 * base.mesh.nx};
    if (levels.size() < 2) throw wc2p::ConfigError("--levels needs at least two mesh sizes");

    double orders[2] = {0.0, 0.0};
    const wc2p::SurfaceTensionMode modes[2] = {wc2p::SurfaceTensionMode::path_conservative,
                                               wc2p::SurfaceTensionMode::csf_source};
    const char* names[2] = {"path_conservative", "csf_source"};
    for (int m = 0; m < 2; ++m) {
        wc2p::CaseConfig c = base;
        c.st_mode = modes[m];
        std::printf("surface tension mode: %s\n", names[m]);
        const auto rows = wc2p::run_ladder(c, levels);
        print_ladder(rows);
        orders[m] = wc2p::ladder_order(rows);
        std::printf("effective order: %.3f\n\n", orders[m]);
        std::fflush(stdout);
    }
    std::printf("order gap (path_conservative - csf_source): %.3f\n", orders[0] - orders[1]);
    return 0;
}

int cmd_validate_mesh(const std::string& mesh_path, const std::string& config_path) {
    wc2p::Mesh mesh;
    if (!mesh_path.empty()) {
        mesh = wc2p::import_mesh(read_file(mesh_path));
    } else if (!config_path.empty()) {
        mesh = wc2p::build_case_mesh(wc2p::parse_config(read_file(config_path)));
    } else {
        throw wc2p::ConfigError("validate-mesh needs --mesh or --config");
    }
    const wc2p::MeshReport r = wc2p::validate_mesh(mesh);
    std::printf("cells: %d, faces: %d, h = %.6g\n", mesh.n_cells(), mesh.n_faces(), mesh.h_avg);
    std::printf("max closure residual: %.3e\n", r.max_closure_residual);
    std::printf("min cell area: %.6g, min face length: %.6g\n", r.min_area, r.min_face_length);
    std::printf("max normal deviation: %.3e, orphan cells: %d\n", r.max_normal_deviation,
                r.orphan_cells);
    for (const auto& msg : r.messages) std::printf("issue: %s\n", msg.c_str());
    std::printf("%s\n", r.pass ? "PASS" : "FAIL");
    if (!r.pass) throw wc2p::MeshError("mesh validation failed");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"weakly compressible two-phase flow solver"};
    app.require_subcommand(1);

    std::string config_path, out_dir, mesh_path;
    std::vector<int> levels;
    std::vector<double> phi_values;

    auto* run = app.add_subcommand("run", "execute one case and write its outputs");
    run->add_option("--config", config_path, "configuration document")->required();
    run->add_option("--out", out_dir, "output directory")->required();

    auto* conv = app.add_subcommand("convergence", "run a refinement ladder and print the order table");
    conv->add_option("--config", config_path, "configuration document")->required();
    conv->add_option("--levels", levels, "mesh sizes, e.g. 32,64,128")->required()->delimiter(',');

    auto* sweep = app.add_subcommand("sweep", "run the Rayleigh-Taylor stability sweep over phi_s");
    sweep->add_option("--config", config_path, "configuration document")->required();
    sweep->add_option("--phi-s", phi_values, "stability parameters, e.g. 0,0.25,0.5")
        ->required()
        ->delimiter(',');

    auto* cmp = app.add_subcommand("compare", "compare both surface tension modes on a ladder");
    cmp->add_option("--config", config_path, "configuration document")->required();
    cmp->add_option("--levels", levels, "mesh sizes (default: nx and 2 nx)")->delimiter(',');

    auto* vm = app.add_subcommand("validate-mesh", "check a mesh document or a case mesh");
    vm->add_option("--mesh", mesh_path, "native mesh document");
    vm->add_option("--config", config_path, "configuration document");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        requested_threads();   // reject malformed WC2P_THREADS up front
        if (*run) return cmd_run(config_path, out_dir);
        if (*conv) return cmd_convergence(config_path, levels);
        if (*sweep) return cmd_sweep(config_path, phi_values);
        if (*cmp) return cmd_compare(config_path, levels);
        if (*vm) return cmd_validate_mesh(mesh_path, config_path);
    } catch (const wc2p::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const wc2p::MeshError& e) {
        std::fprintf(stderr, "mesh error: %s\n", e.what());
        return 2;
    } catch (const wc2p::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "solver abort: %s\n", e.what());
        return 3;
    }
    return 2;
}
