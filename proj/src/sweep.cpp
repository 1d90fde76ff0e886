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
#include "raddiff/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "raddiff/kernels.hpp"

namespace raddiff {

namespace {

std::vector<double> snapshot_schedule(double t_end, int count, double extra_time) {
    std::vector<double> times;
    for (int k = 0; k <= count; ++k) times.push_back(t_end * k / count);
    if (extra_time > 0.0 && extra_time < t_end) times.push_back(extra_time);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end(),
                            [&](double a, double b) { return std::fabs(a - b) < 1e-12 * t_end; }),
                times.end());
    return times;
}

std::size_t index_of_time(const std::vector<double>& times, double t) {
    std::size_t best = 0;
    double best_err = 1e300;
    for (std::size_t i = 0; i < times.size(); ++i) {
        double err = std::fabs(times[i] - t);
        if (err < best_err) {
            best_err = err;
            best = i;
        }
    }
    return best;
}

Norms diff_norms(std::span<const double> a, std::span<const double> b, const PeriodicGrid& grid) {
    std::vector<double> d(a.size());
    kernels::axpby(a.size(), 1.0, a.data(), -1.0, b.data(), d.data());
    return norms(d, grid);
}

Norms vector_diff_norms(const std::array<std::vector<double>, 3>& a,
                        const std::array<std::vector<double>, 3>& b, const PeriodicGrid& grid) {
    std::vector<double> mag(grid.cells(), 0.0);
    for (std::size_t c = 0; c < grid.cells(); ++c) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) {
            double d = a[k][c] - b[k][c];
            s += d * d;
        }
        mag[c] = std::sqrt(s);
    }
    return norms(mag, grid);
}

void add_fit(std::map<std::string, FitResult>& fits, const std::string& name,
             const std::vector<std::pair<double, double>>& pairs) {
    if (pairs.size() >= 3) fits[name] = fit_order(pairs);
}

}  // namespace

ConvergenceReport epsilon_sweep(const RunConfig& cfg) {
    cfg.validate();
    PeriodicGrid grid(cfg.dim, cfg.cells);
    auto quad = std::make_shared<AngularQuadrature>(
        AngularQuadrature::build(cfg.quad_kind, cfg.quad_order));
    PresetState preset = make_preset(cfg.ic, grid, quad, cfg.c_planck);
    InitialLayer layer(preset.radiation);

    std::vector<double> times = snapshot_schedule(cfg.t_end, cfg.snapshots, cfg.flux_time);
    std::size_t flux_idx = index_of_time(times, cfg.flux_time);
    std::size_t final_idx = times.size() - 1;

    ConvergenceReport report;
    report.time_compared = cfg.t_end;
    report.flux_time = times[flux_idx];
    report.config_hash = config_hash_hex(cfg);
    report.version = kVersion;

    // Reference limit run, shared across the sweep.
    double dt_limit = cfg.limit_dt;
    if (dt_limit <= 0.0) {
        double dt_kin_smallest =
            cfg.policy.kind == DtPolicyKind::Fixed
                ? cfg.policy.value
                : cfg.policy.value * kinetic_max_dt(*quad, grid, cfg.epsilons.back(), cfg.advection);
        double dt_fluid = fluid_max_dt(primitive_to_conservative(preset.fluid));
        dt_limit = std::min(0.5 * dt_kin_smallest, 0.45 * dt_fluid);
    }
    report.limit_dt = dt_limit;

    LimitOptions limit_opts;
    limit_opts.c_planck = cfg.c_planck;
    limit_opts.flux.muscl = cfg.muscl;
    LimitState limit0(preset.fluid, moment0_field(preset.radiation));
    LimitTrajectory limit_traj = run_limit(limit0, cfg.t_end, dt_limit, limit_opts, times);

    std::vector<ScalarField> limit_fbar;
    for (const auto& s : limit_traj.snapshots) limit_fbar.push_back(s.fbar);

    CoupledOptions coupled_opts;
    coupled_opts.advection = cfg.advection;
    coupled_opts.c_planck = cfg.c_planck;
    coupled_opts.flux.muscl = cfg.muscl;

    for (double eps : cfg.epsilons) {
        EpsilonParams params{eps, cfg.policy, cfg.t_end};
        CoupledState initial{preset.fluid, preset.radiation, 0.0};
        CoupledTrajectory traj;
        try {
            traj = run_coupled(initial, params, coupled_opts, times);
        } catch (const NumericError& err) {
            throw SweepAborted("eps = " + std::to_string(eps) + " failed: " + err.what(),
                               std::move(report));
        }

        EpsilonRow row;
        row.eps = eps;
        row.dt = traj.dt_nominal;
        row.steps = traj.steps;

        std::vector<KineticField> kin_fields;
        for (const auto& s : traj.snapshots) kin_fields.push_back(s.radiation);

        double window_t = cfg.window_k * eps * eps;
        auto record = [&](ErrorStats& stats, const Norms& n, bool final_time, bool windowed) {
            stats.l2_max = std::max(stats.l2_max, n.l2);
            if (windowed) stats.l2_max_windowed = std::max(stats.l2_max_windowed, n.l2);
            if (final_time) {
                stats.l2 = n.l2;
                stats.linf = n.linf;
            }
        };
        for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
            bool final_time = i == final_idx;
            bool windowed = times[i] >= window_t;
            ScalarField fbar_eps = moment0_field(traj.snapshots[i].radiation);
            const FluidState& fe = traj.snapshots[i].fluid;
            const FluidState& fl = limit_traj.snapshots[i].fluid;
            record(row.fbar, diff_norms(fbar_eps.data, limit_fbar[i].data, grid), final_time,
                   windowed);
            record(row.theta, diff_norms(fe.theta, fl.theta, grid), final_time, windowed);
            record(row.rho, diff_norms(fe.rho, fl.rho, grid), final_time, windowed);
            record(row.u, vector_diff_norms(fe.u, fl.u, grid), final_time, windowed);
        }

        RemainderSeries rem =
            remainder_diagnostic(times, kin_fields, limit_fbar, layer, eps, cfg.window_k);
        row.remainder_linf_max = rem.max_linf;
        row.remainder_linf_max_windowed = rem.max_linf_windowed;
        row.flux_residual_l2 = rem.rows[flux_idx].flux_residual_l2;

        row.mass_drift_rel = traj.ledger.mass_drift_rel();
        row.energy_drift_rel = traj.ledger.energy_drift_rel();
        row.momentum_drift_abs = traj.ledger.momentum_drift_abs();

        report.rows.push_back(row);
    }

    auto field_pairs = [&](ErrorStats EpsilonRow::* member) {
        std::vector<std::pair<double, double>> pairs;
        for (const auto& r : report.rows) pairs.emplace_back(r.eps, (r.*member).l2);
        return pairs;
    };
    auto scalar_pairs = [&](double EpsilonRow::* member) {
        std::vector<std::pair<double, double>> pairs;
        for (const auto& r : report.rows) pairs.emplace_back(r.eps, r.*member);
        return pairs;
    };
    try {
        add_fit(report.fits, "fbar_l2", field_pairs(&EpsilonRow::fbar));
        add_fit(report.fits, "theta_l2", field_pairs(&EpsilonRow::theta));
        add_fit(report.fits, "u_l2", field_pairs(&EpsilonRow::u));
        add_fit(report.fits, "rho_l2", field_pairs(&EpsilonRow::rho));
        add_fit(report.fits, "flux_residual_l2", scalar_pairs(&EpsilonRow::flux_residual_l2));
        add_fit(report.fits, "remainder_linf_max", scalar_pairs(&EpsilonRow::remainder_linf_max));
    } catch (const NumericError& err) {
        throw SweepAborted(std::string("order fit failed: ") + err.what(), std::move(report));
    }
    return report;
}

LayerReport layer_sweep(const RunConfig& cfg) {
    cfg.validate();
    PeriodicGrid grid(cfg.dim, cfg.cells);
    auto quad = std::make_shared<AngularQuadrature>(
        AngularQuadrature::build(cfg.quad_kind, cfg.quad_order));
    PresetState preset = make_preset(cfg.ic, grid, quad, cfg.c_planck);
    InitialLayer layer(preset.radiation);

    LayerReport report;
    report.tau_max = cfg.tau_max;
    report.config_hash = config_hash_hex(cfg);
    report.version = kVersion;

    const double dtau = 0.05;  // relaxation resolved on the fast time scale
    const int n_snap = 40;

    LimitOptions limit_opts;
    limit_opts.c_planck = cfg.c_planck;
    limit_opts.flux.muscl = cfg.muscl;
    CoupledOptions coupled_opts;
    coupled_opts.advection = cfg.advection;
    coupled_opts.c_planck = cfg.c_planck;
    coupled_opts.flux.muscl = cfg.muscl;

    for (double eps : cfg.epsilons) {
        double eps2 = eps * eps;
        double t_end = cfg.tau_max * eps2;
        std::vector<double> times;
        for (int k = 0; k <= n_snap; ++k) times.push_back(t_end * k / n_snap);
        times.push_back(eps2);  // tau = 1 exactly
        std::sort(times.begin(), times.end());
        times.erase(std::unique(times.begin(), times.end(),
                                [&](double a, double b) { return std::fabs(a - b) < 1e-12 * t_end; }),
                    times.end());

        EpsilonParams params{eps, DtPolicy::fixed(eps2 * dtau), t_end};
        CoupledState initial{preset.fluid, preset.radiation, 0.0};
        CoupledTrajectory traj = run_coupled(initial, params, coupled_opts, times);
        LimitState limit0(preset.fluid, moment0_field(preset.radiation));
        LimitTrajectory limit_traj = run_limit(limit0, t_end, eps2 * dtau, limit_opts, times);

        std::vector<KineticField> kin_fields;
        for (const auto& s : traj.snapshots) kin_fields.push_back(s.radiation);
        std::vector<ScalarField> limit_fbar;
        for (const auto& s : limit_traj.snapshots) limit_fbar.push_back(s.fbar);

        LayerRow row;
        row.eps = eps;
        row.series = remainder_diagnostic(traj.times, kin_fields, limit_fbar, layer, eps,
                                          cfg.window_k);
        row.remainder_linf_max = row.series.max_linf;
        row.remainder_linf_max_windowed = row.series.max_linf_windowed;

        // Raw anisotropy at tau = 1 against e^{-1}(h - hbar).
        std::size_t idx = index_of_time(traj.times, eps2);
        const KineticField& f = traj.snapshots[idx].radiation;
        ScalarField fbar_eps = moment0_field(f);
        KineticField expected = initial_layer_eval(layer, 1.0);
        double scale = kinetic_norms(expected).linf;
        KineticField diff(grid, quad);
        for (std::size_t q = 0; q < f.num_nodes(); ++q) {
            kernels::axpby(grid.cells(), 1.0, f.row(q).data(), -1.0, fbar_eps.data.data(),
                           diff.row(q).data());
            kernels::axpy(grid.cells(), -1.0, expected.row(q).data(), diff.row(q).data());
        }
        row.aniso_rel_error_tau1 = scale > 0.0 ? kinetic_norms(diff).linf / scale : 0.0;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace raddiff
