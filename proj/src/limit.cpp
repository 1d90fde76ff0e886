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
#include "raddiff/limit.hpp"

#include <algorithm>
#include <cmath>

#include "raddiff/kernels.hpp"
#include "raddiff/operators.hpp"
#include "raddiff/planck.hpp"

namespace raddiff {

namespace {

// y = ((1+dt) I - (dt/3) Lap_h) x
void apply_operator(const PeriodicGrid& grid, double dt, std::span<const double> x,
                    std::span<double> y, std::vector<double>& lap_scratch) {
    laplacian_into(grid, x, lap_scratch);
    kernels::axpby(x.size(), 1.0 + dt, x.data(), -dt / 3.0, lap_scratch.data(), y.data());
}

}  // namespace

ScalarField fbar_implicit_step(const ScalarField& fbar, std::span<const double> planck_b, double dt,
                               double rel_tol, int max_iters) {
    const PeriodicGrid& grid = fbar.grid;
    const std::size_t nc = grid.cells();

    std::vector<double> rhs(nc);
    kernels::axpby(nc, 1.0, fbar.data.data(), dt, planck_b.data(), rhs.data());

    // Conjugate gradients on the SPD M-matrix, warm-started at fbar^n.
    ScalarField x = fbar;
    std::vector<double> r(nc), p(nc), ap(nc), lap(nc);
    apply_operator(grid, dt, x.data, ap, lap);
    kernels::axpby(nc, 1.0, rhs.data(), -1.0, ap.data(), r.data());
    p = r;
    double rr = kernels::dot(nc, r.data(), r.data());
    double b_norm = std::sqrt(kernels::dot(nc, rhs.data(), rhs.data()));
    double tol = rel_tol * std::max(b_norm, 1e-300);

    int it = 0;
    while (std::sqrt(rr) > tol) {
        if (it++ >= max_iters)
            throw NumericError("limit", "CG for the fbar solve did not reach residual " +
                                            std::to_string(tol) + " in " +
                                            std::to_string(max_iters) +
                                            " iterations (residual = " + std::to_string(std::sqrt(rr)) +
                                            ")");
        apply_operator(grid, dt, p, ap, lap);
        double alpha = rr / kernels::dot(nc, p.data(), ap.data());
        kernels::axpy(nc, alpha, p.data(), x.data.data());
        kernels::axpy(nc, -alpha, ap.data(), r.data());
        double rr_new = kernels::dot(nc, r.data(), r.data());
        kernels::axpby(nc, 1.0, r.data(), rr_new / rr, p.data(), p.data());
        rr = rr_new;
    }
    return x;
}

LimitState limit_step(const LimitState& state, double dt, const LimitOptions& opts) {
    if (!(dt > 0.0)) throw NumericError("limit", "dt must be positive");
    const PeriodicGrid& grid = state.fluid.grid;

    ConservativeState cons = primitive_to_conservative(state.fluid);
    double dt_max = fluid_max_dt(cons);
    if (dt > dt_max * (1.0 + 1e-12))
        throw CflError("limit/fluid", "step dt = " + std::to_string(dt), 0.9 * dt_max);

    // Sources frozen at step start: momentum -(1/3) grad fbar, energy fbar - B.
    RadiativeSources sources(grid);
    VectorField grad = gradient_central(state.fbar);
    for (int a = 0; a < grid.dim(); ++a)
        kernels::axpy(grid.cells(), -1.0 / 3.0, grad.comp[a].data(), sources.s_f[a].data());
    std::vector<double> b_pre = planck_field(state.fluid.theta, opts.c_planck);
    kernels::axpby(grid.cells(), 1.0, state.fbar.data.data(), -1.0, b_pre.data(),
                   sources.s_e.data());

    cons = rusanov_flux_step(cons, dt, opts.flux);
    apply_sources(cons, sources, dt);

    LimitState out;
    out.fluid = conservative_to_primitive(cons);
    std::vector<double> b_post = planck_field(out.fluid.theta, opts.c_planck);
    out.fbar = fbar_implicit_step(state.fbar, b_post, dt, opts.cg_rel_tol, opts.cg_max_iters);
    out.time = state.time + dt;
    return out;
}

LimitTrajectory run_limit(const LimitState& initial, double t_end, double dt,
                          const LimitOptions& opts, std::span<const double> snapshot_times) {
    if (!(t_end > 0.0)) throw ConfigError("t_end must be positive");
    LimitTrajectory traj;
    std::vector<double> snaps(snapshot_times.begin(), snapshot_times.end());
    std::sort(snaps.begin(), snaps.end());
    if (snaps.empty() || snaps.front() > 0.0) snaps.insert(snaps.begin(), 0.0);
    if (snaps.back() < t_end) snaps.push_back(t_end);

    LimitState state = initial;
    state.time = 0.0;
    for (double target : snaps) {
        target = std::min(target, t_end);
        while (state.time < target - 1e-13 * t_end) {
            double step = std::min(dt, target - state.time);
            state = limit_step(state, step, opts);
            ++traj.steps;
        }
        state.time = target;
        traj.times.push_back(target);
        traj.snapshots.push_back(state);
        if (target >= t_end) break;
    }
    return traj;
}

InitialLayer::InitialLayer(const KineticField& datum) : h(datum), hbar(moment0_field(datum)) {}

KineticField initial_layer_eval(const InitialLayer& layer, double tau) {
    if (tau < 0.0) throw NumericError("limit", "layer time tau must be >= 0");
    double decay = std::exp(-tau);
    KineticField out(layer.h.grid(), layer.h.quad_ptr());
    for (std::size_t q = 0; q < out.num_nodes(); ++q) {
        kernels::axpby(out.cells(), decay, layer.h.row(q).data(), -decay, layer.hbar.data.data(),
                       out.row(q).data());
    }
    return out;
}

RemainderSeries remainder_diagnostic(const std::vector<double>& times,
                                     const std::vector<KineticField>& kinetic,
                                     const std::vector<ScalarField>& limit_fbar,
                                     const InitialLayer& layer, double eps, double window_k) {
    if (times.size() != kinetic.size() || times.size() != limit_fbar.size())
        throw NumericError("limit", "remainder diagnostic needs matched trajectories");
    RemainderSeries series;
    series.window_k = window_k;
    const double eps2 = eps * eps;

    for (std::size_t i = 0; i < times.size(); ++i) {
        double tau = times[i] / eps2;
        KineticField rem = initial_layer_eval(layer, tau);  // holds f_I0, reused as scratch
        const KineticField& f = kinetic[i];
        for (std::size_t q = 0; q < f.num_nodes(); ++q) {
            auto r = rem.row(q);
            // rem = f - fbar_limit - f_I0
            kernels::axpby(f.cells(), 1.0, f.row(q).data(), -1.0, r.data(), r.data());
            kernels::axpy(f.cells(), -1.0, limit_fbar[i].data.data(), r.data());
        }
        Norms n = kinetic_norms(rem);
        RemainderRow row;
        row.t = times[i];
        row.tau = tau;
        row.remainder_linf = n.linf;
        row.remainder_l2 = n.l2;
        row.flux_residual_l2 = flux_limit_diagnostic(f, eps).residual_norms.l2;
        series.rows.push_back(row);
        series.max_linf = std::max(series.max_linf, n.linf);
        if (tau >= window_k) series.max_linf_windowed = std::max(series.max_linf_windowed, n.linf);
    }
    return series;
}

FluxLimitDiagnostic flux_limit_diagnostic(const KineticField& f, double eps) {
    FluxLimitDiagnostic diag;
    diag.j = moment1_field(f);
    const PeriodicGrid& grid = f.grid();
    for (int a = 0; a < 3; ++a)
        for (double& v : diag.j.comp[a]) v /= eps;

    ScalarField fbar = moment0_field(f);
    VectorField grad = gradient_central(fbar);
    diag.residual = VectorField(grid);
    for (int a = 0; a < 3; ++a) {
        kernels::axpby(grid.cells(), 1.0, diag.j.comp[a].data(), 1.0 / 3.0, grad.comp[a].data(),
                       diag.residual.comp[a].data());
    }
    std::vector<double> magnitude(grid.cells(), 0.0);
    for (std::size_t c = 0; c < grid.cells(); ++c) {
        double s = 0.0;
        for (int a = 0; a < 3; ++a) s += diag.residual.comp[a][c] * diag.residual.comp[a][c];
        magnitude[c] = std::sqrt(s);
    }
    diag.residual_norms = norms(magnitude, grid);
    return diag;
}

}  // namespace raddiff
