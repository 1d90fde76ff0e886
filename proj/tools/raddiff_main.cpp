/*
   Copyright 2026 the raddiff authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Command-line front end. Subcommands:
//   run                  coupled eps-system simulation, snapshots + ledger CSV
//   limit                limit-system simulation
//   converge             eps sweep against the limit solver, order fits
//   layer                initial-layer sweep on the fast time scale
//   invariants           conservation ledger for every eps in the list
//   validate-quadrature  angular-moment identities of the configured set
//   validate-planck      spectrum-integral check of B(theta) = C theta^4
//
// Exit codes: 0 success, 2 config error, 3 numeric failure,
// 4 failed validation / failed `converge --assert` assertion.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>

#include <CLI11.hpp>

#include "raddiff/config.hpp"
#include "raddiff/kernels.hpp"
#include "raddiff/planck.hpp"
#include "raddiff/report.hpp"
#include "raddiff/snapshot.hpp"

using namespace raddiff;

namespace {

struct CliCommon {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string outdir_flag;
    double eps_flag = 0.0;
};

void add_common(CLI::App* cmd, CliCommon& common, bool with_eps = false) {
    cmd->add_option("-c,--config", common.config_path, "Run configuration file");
    cmd->add_option("--set", common.overrides, "Override a config key (section.key=value)");
    cmd->add_option("--outdir", common.outdir_flag, "Output directory (beats RADDIFF_OUTDIR)");
    if (with_eps) cmd->add_option("--eps", common.eps_flag, "Use this eps instead of the list head");
}

RunConfig load_config(const CliCommon& common) {
    RunConfig cfg = common.config_path.empty() ? RunConfig{} : parse_config_file(common.config_path);
    if (const char* env = std::getenv("RADDIFF_OUTDIR")) cfg.out_dir = env;
    for (const auto& assignment : common.overrides) apply_override(cfg, assignment);
    if (!common.outdir_flag.empty()) cfg.out_dir = common.outdir_flag;
    cfg.validate();
    std::filesystem::create_directories(cfg.out_dir);
    return cfg;
}

double chosen_eps(const RunConfig& cfg, const CliCommon& common) {
    return common.eps_flag > 0.0 ? common.eps_flag : cfg.epsilons.front();
}

std::vector<double> schedule(const RunConfig& cfg) {
    std::vector<double> times;
    for (int k = 0; k <= cfg.snapshots; ++k) times.push_back(cfg.t_end * k / cfg.snapshots);
    return times;
}

int cmd_run(const CliCommon& common) {
    RunConfig cfg = load_config(common);
    double eps = chosen_eps(cfg, common);
    PeriodicGrid grid(cfg.dim, cfg.cells);
    auto quad = std::make_shared<AngularQuadrature>(
        AngularQuadrature::build(cfg.quad_kind, cfg.quad_order));
    PresetState preset = make_preset(cfg.ic, grid, quad, cfg.c_planck);
    std::printf("preset %s: positivity lower bound a = %.6g\n", cfg.ic.preset.c_str(),
                preset.positivity_lower_bound);

    CoupledOptions opts;
    opts.advection = cfg.advection;
    opts.c_planck = cfg.c_planck;
    opts.flux.muscl = cfg.muscl;
    opts.dump_dir = cfg.out_dir;
    EpsilonParams params{eps, cfg.policy, cfg.t_end};
    CoupledState initial{preset.fluid, preset.radiation, 0.0};
    CoupledTrajectory traj = run_coupled(initial, params, opts, schedule(cfg));

    write_text_file(cfg.out_dir + "/ledger.csv", ledger_csv_text(traj.ledger, config_hash_hex(cfg)));
    const CoupledState& last = traj.snapshots.back();
    save_kinetic_snapshot(last.radiation, last.time, cfg.out_dir + "/radiation_final.snap",
                          cfg.snap_format);
    ScalarField theta(grid);
    theta.data = last.fluid.theta;
    save_scalar_snapshot(theta, last.time, cfg.out_dir + "/theta_final.snap", cfg.snap_format);

    std::printf("run: eps = %g, %zu steps, dt = %.3e, wall %.2fs\n", eps, traj.steps,
                traj.dt_nominal, traj.wall_seconds);
    std::printf("drifts: mass %.3e (rel), energy %.3e (rel), momentum %.3e (abs)\n",
                traj.ledger.mass_drift_rel(), traj.ledger.energy_drift_rel(),
                traj.ledger.momentum_drift_abs());

    // Loss-of-smoothness heuristic: growth of the density gradient scale.
    auto rho_roughness = [&](const CoupledState& s) {
        ScalarField rho(grid);
        rho.data = s.fluid.rho;
        return h1_seminorm(rho) / std::max(norms(rho).l2, 1e-300);
    };
    double growth = rho_roughness(last) / std::max(rho_roughness(traj.snapshots.front()), 1e-300);
    if (growth > 10.0)
        std::printf("note: density gradient scale grew %.1fx; the smooth-solution window may "
                    "have been left\n",
                    growth);
    return 0;
}

int cmd_limit(const CliCommon& common) {
    RunConfig cfg = load_config(common);
    PeriodicGrid grid(cfg.dim, cfg.cells);
    auto quad = std::make_shared<AngularQuadrature>(
        AngularQuadrature::build(cfg.quad_kind, cfg.quad_order));
    PresetState preset = make_preset(cfg.ic, grid, quad, cfg.c_planck);

    LimitOptions opts;
    opts.c_planck = cfg.c_planck;
    opts.flux.muscl = cfg.muscl;
    double dt = cfg.limit_dt > 0.0
                    ? cfg.limit_dt
                    : 0.45 * fluid_max_dt(primitive_to_conservative(preset.fluid));
    LimitState initial(preset.fluid, moment0_field(preset.radiation));
    LimitTrajectory traj = run_limit(initial, cfg.t_end, dt, opts, schedule(cfg));

    const LimitState& last = traj.snapshots.back();
    save_scalar_snapshot(last.fbar, last.time, cfg.out_dir + "/limit_fbar_final.snap",
                         cfg.snap_format);
    ScalarField theta(grid);
    theta.data = last.fluid.theta;
    save_scalar_snapshot(theta, last.time, cfg.out_dir + "/limit_theta_final.snap", cfg.snap_format);
    std::printf("limit: %zu steps, dt = %.3e\n", traj.steps, dt);
    return 0;
}

int cmd_converge(const CliCommon& common, bool assert_mode, double min_order) {
    RunConfig cfg = load_config(common);
    ConvergenceReport report;
    try {
        report = epsilon_sweep(cfg);
    } catch (SweepAborted& aborted) {
        write_text_file(cfg.out_dir + "/converge.csv", convergence_csv_text(aborted.partial_report));
        write_text_file(cfg.out_dir + "/converge.json",
                        convergence_json_text(aborted.partial_report));
        std::fprintf(stderr, "sweep aborted (partial report preserved): %s\n", aborted.what());
        return 3;
    }
    write_text_file(cfg.out_dir + "/converge.csv", convergence_csv_text(report));
    write_text_file(cfg.out_dir + "/converge.json", convergence_json_text(report));

    for (const auto& [name, fit] : report.fits) {
        if (fit.indeterminate)
            std::printf("fit %-20s indeterminate (errors at rounding level)\n", name.c_str());
        else
            std::printf("fit %-20s slope %.3f  residual %.3f  monotone %s\n", name.c_str(),
                        fit.slope, fit.residual, fit.monotone ? "yes" : "no");
    }

    if (assert_mode) {
        for (const char* name : {"fbar_l2", "theta_l2", "flux_residual_l2"}) {
            auto it = report.fits.find(name);
            if (it == report.fits.end()) {
                std::fprintf(stderr, "assert: fit '%s' missing\n", name);
                return 4;
            }
            if (it->second.indeterminate) {
                std::fprintf(stderr, "assert: fit '%s' indeterminate\n", name);
                return 4;
            }
            if (!it->second.monotone) {
                std::fprintf(stderr, "assert: '%s' errors not monotone in eps\n", name);
                return 4;
            }
            if (it->second.slope < min_order) {
                std::fprintf(stderr, "assert: '%s' observed order %.3f < %.3f\n", name,
                             it->second.slope, min_order);
                return 4;
            }
        }
        std::printf("converge --assert: all fitted orders >= %.2f and monotone\n", min_order);
    }
    return 0;
}

int cmd_layer(const CliCommon& common) {
    RunConfig cfg = load_config(common);
    if (cfg.ic.preset == "equilibrium")
        std::fprintf(stderr, "note: layer diagnostics on the equilibrium preset are trivial\n");
    LayerReport report = layer_sweep(cfg);
    write_text_file(cfg.out_dir + "/layer.csv", layer_csv_text(report));
    write_text_file(cfg.out_dir + "/layer.json", layer_json_text(report));
    for (const auto& row : report.rows)
        std::printf("eps %-8g max|remainder| %.4e (windowed %.4e)  aniso@tau=1 rel %.3f\n", row.eps,
                    row.remainder_linf_max, row.remainder_linf_max_windowed,
                    row.aniso_rel_error_tau1);
    return 0;
}

int cmd_invariants(const CliCommon& common) {
    RunConfig cfg = load_config(common);
    PeriodicGrid grid(cfg.dim, cfg.cells);
    auto quad = std::make_shared<AngularQuadrature>(
        AngularQuadrature::build(cfg.quad_kind, cfg.quad_order));
    PresetState preset = make_preset(cfg.ic, grid, quad, cfg.c_planck);
    CoupledOptions opts;
    opts.advection = cfg.advection;
    opts.c_planck = cfg.c_planck;
    opts.flux.muscl = cfg.muscl;

    int idx = 0;
    for (double eps : cfg.epsilons) {
        EpsilonParams params{eps, cfg.policy, cfg.t_end};
        CoupledState initial{preset.fluid, preset.radiation, 0.0};
        CoupledTrajectory traj = run_coupled(initial, params, opts, schedule(cfg));
        std::string path = cfg.out_dir + "/ledger_eps" + std::to_string(idx++) + ".csv";
        write_text_file(path, ledger_csv_text(traj.ledger, config_hash_hex(cfg)));
        std::printf("eps %-8g mass drift %.3e  energy drift %.3e  momentum drift %.3e\n", eps,
                    traj.ledger.mass_drift_rel(), traj.ledger.energy_drift_rel(),
                    traj.ledger.momentum_drift_abs());
    }
    return 0;
}

int cmd_validate_quadrature(const CliCommon& common) {
    RunConfig cfg = load_config(common);
    AngularQuadrature quad = AngularQuadrature::build(cfg.quad_kind, cfg.quad_order);
    QuadratureIdentities id = quadrature_identities(quad);
    std::printf("%s order %d: %zu nodes\n", quadrature_kind_name(cfg.quad_kind).c_str(),
                cfg.quad_order, quad.size());
    std::printf("  |sum w - 1|          = %.3e  (<= 1e-14)\n", id.weight_sum_error);
    std::printf("  max | |w_q| - 1 |    = %.3e  (<= 1e-14)\n", id.node_norm_error);
    std::printf("  max |<w>|            = %.3e  (<= 1e-13)\n", id.mean_direction);
    std::printf("  max |<w w> - I/3|    = %.3e  (<= 1e-13)\n", id.second_moment_dev);
    bool ok = id.weight_sum_error <= 1e-14 && id.node_norm_error <= 1e-14 &&
              id.mean_direction <= 1e-13 && id.second_moment_dev <= 1e-13;
    std::printf("validate-quadrature: %s\n", ok ? "PASS" : "FAIL");
    return ok ? 0 : 4;
}

int cmd_validate_planck(const CliCommon& common) {
    RunConfig cfg = load_config(common);
    (void)cfg;
    const double target = std::pow(std::numbers::pi, 4) / 15.0;
    std::printf("target: pi^4/15 = %.8f\n", target);
    bool ok = true;
    for (double theta : {0.5, 1.0, 2.0}) {
        double integral = planck_spectrum_integral(theta);
        double ratio = integral / planck(theta, 1.0);
        double err = std::fabs(ratio - target);
        std::printf("  theta = %-4g integral/theta^4 = %.10f  |err| = %.3e  (<= 1e-8)\n", theta,
                    ratio, err);
        ok = ok && err <= 1e-8;
    }
    std::printf("validate-planck: %s\n", ok ? "PASS" : "FAIL");
    return ok ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"raddiff: scaled radiative-transfer/Euler system, its diffusion limit, and the "
                 "convergence harness"};
    app.require_subcommand(1);

    CliCommon common;
    bool assert_mode = false;
    double min_order = 0.8;

    auto* run = app.add_subcommand("run", "Coupled eps-system simulation");
    add_common(run, common, true);
    auto* limit = app.add_subcommand("limit", "Limit-system simulation");
    add_common(limit, common);
    auto* converge = app.add_subcommand("converge", "Epsilon sweep with order fits");
    add_common(converge, common);
    converge->add_flag("--assert", assert_mode, "Exit 4 unless fitted orders pass");
    converge->add_option("--min-order", min_order, "Order threshold for --assert");
    auto* layer = app.add_subcommand("layer", "Initial-layer sweep");
    add_common(layer, common);
    auto* invariants = app.add_subcommand("invariants", "Conservation ledgers per eps");
    add_common(invariants, common);
    auto* vq = app.add_subcommand("validate-quadrature", "Angular identities check");
    add_common(vq, common);
    auto* vp = app.add_subcommand("validate-planck", "Planck spectrum integral check");
    add_common(vp, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        std::printf("kernels: %s\n", kernels::active().name);
        if (run->parsed()) return cmd_run(common);
        if (limit->parsed()) return cmd_limit(common);
        if (converge->parsed()) return cmd_converge(common, assert_mode, min_order);
        if (layer->parsed()) return cmd_layer(common);
        if (invariants->parsed()) return cmd_invariants(common);
        if (vq->parsed()) return cmd_validate_quadrature(common);
        if (vp->parsed()) return cmd_validate_planck(common);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const NumericError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
