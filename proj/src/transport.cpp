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
#include "raddiff/transport.hpp"

#include <algorithm>
#include <cmath>

#include "raddiff/kernels.hpp"
#include "raddiff/operators.hpp"

namespace raddiff {

void EpsilonParams::validate() const {
    if (!(eps > 0.0 && eps <= 1.0))
        throw ConfigError("eps must lie in (0, 1], got " + std::to_string(eps));
    if (!(t_end > 0.0)) throw ConfigError("t_end must be positive");
    if (!(policy.value > 0.0)) throw ConfigError("dt policy value must be positive");
    if (policy.kind == DtPolicyKind::Cfl && policy.value > 1.0)
        throw ConfigError("CFL number must be <= 1, got " + std::to_string(policy.value));
}

AdvectionMode advection_mode_from_name(const std::string& name) {
    if (name == "upwind") return AdvectionMode::Upwind;
    if (name == "split") return AdvectionMode::MeanSplit;
    if (name == "frozen") return AdvectionMode::FrozenLimitFlux;
    throw ConfigError("unknown advection mode '" + name + "' (upwind|split|frozen)");
}

std::string advection_mode_name(AdvectionMode mode) {
    switch (mode) {
        case AdvectionMode::Upwind: return "upwind";
        case AdvectionMode::MeanSplit: return "split";
        default: return "frozen";
    }
}

namespace {

double max_component_sum(const AngularQuadrature& quad, int dim) {
    double m = 0.0;
    for (std::size_t q = 0; q < quad.size(); ++q) {
        double s = 0.0;
        for (int a = 0; a < dim; ++a) s += std::fabs(quad.node(q)[a]);
        m = std::max(m, s);
    }
    return m;
}

// Advection field ADV_q = discretization of (1/eps) w_q . grad f.
void advection_field(const KineticField& f, double eps, AdvectionMode mode, KineticField& adv) {
    const PeriodicGrid& grid = f.grid();
    const std::size_t nc = f.cells();
    std::fill(adv.values().begin(), adv.values().end(), 0.0);

    if (mode == AdvectionMode::Upwind) {
        for (std::size_t q = 0; q < f.num_nodes(); ++q)
            add_directional_upwind(grid, f.row(q), f.quad().node(q), 1.0 / eps, adv.row(q));
        return;
    }

    ScalarField fbar = moment0_field(f);
    std::array<std::vector<double>, 3> grad;
    for (int a = 0; a < grid.dim(); ++a) {
        grad[a].assign(nc, 0.0);
        central_derivative(grid, fbar.data, a, grad[a]);
    }

    if (mode == AdvectionMode::MeanSplit) {
        std::vector<double> fluct(nc);
        for (std::size_t q = 0; q < f.num_nodes(); ++q) {
            const Vec3& w = f.quad().node(q);
            auto out = adv.row(q);
            for (int a = 0; a < grid.dim(); ++a) {
                if (w[a] == 0.0) continue;
                kernels::axpy(nc, w[a] / eps, grad[a].data(), out.data());
            }
            kernels::axpby(nc, 1.0, f.row(q).data(), -1.0, fbar.data.data(), fluct.data());
            add_directional_upwind(grid, fluct, w, 1.0 / eps, out);
        }
        return;
    }

    // FrozenLimitFlux: (1/eps) w.grad fbar - w.grad(w.grad fbar), all central.
    std::array<std::array<std::vector<double>, 3>, 3> hess;
    for (int a = 0; a < grid.dim(); ++a) {
        for (int b = 0; b < grid.dim(); ++b) {
            hess[a][b].assign(nc, 0.0);
            central_derivative(grid, grad[b], a, hess[a][b]);
        }
    }
    for (std::size_t q = 0; q < f.num_nodes(); ++q) {
        const Vec3& w = f.quad().node(q);
        auto out = adv.row(q);
        for (int a = 0; a < grid.dim(); ++a) {
            if (w[a] == 0.0) continue;
            kernels::axpy(nc, w[a] / eps, grad[a].data(), out.data());
            for (int b = 0; b < grid.dim(); ++b) {
                if (w[b] == 0.0) continue;
                kernels::axpy(nc, -w[a] * w[b], hess[a][b].data(), out.data());
            }
        }
    }
}

}  // namespace

double kinetic_max_dt(const AngularQuadrature& quad, const PeriodicGrid& grid, double eps,
                      AdvectionMode mode) {
    double h = grid.h();
    double advective = eps * h / max_component_sum(quad, grid.dim());
    double parabolic = 1.5 * h * h;  // central-mean coupling acts as explicit (1/3) diffusion
    switch (mode) {
        case AdvectionMode::Upwind: return advective;
        case AdvectionMode::MeanSplit: return std::min(advective, parabolic);
        default: return 2.0 * parabolic;  // wide-stencil explicit diffusion only
    }
}

double imex_positivity_coefficient(const AngularQuadrature& quad, const PeriodicGrid& grid,
                                   double eps, double dt) {
    return 1.0 - dt / (eps * grid.h()) * max_component_sum(quad, grid.dim());
}

KineticField imex_step(const KineticField& f, std::span<const double> planck_b, double eps,
                       double dt, AdvectionMode mode) {
    if (!(dt > 0.0)) throw NumericError("transport", "dt must be positive");
    if (planck_b.size() != f.cells())
        throw NumericError("transport", "Planck source length != cell count");

    const std::size_t nc = f.cells();
    KineticField g(f.grid(), f.quad_ptr());
    advection_field(f, eps, mode, g);  // g holds ADV for now
    for (std::size_t q = 0; q < f.num_nodes(); ++q) {
        auto gr = g.row(q);
        // g = f - dt*ADV + dt*B
        kernels::axpby(nc, -dt, gr.data(), 1.0, f.row(q).data(), gr.data());
        kernels::axpy(nc, dt, planck_b.data(), gr.data());
    }

    ScalarField gbar = moment0_field(g);
    const double beta = dt / (eps * eps);
    const double inv_den = 1.0 / (1.0 + beta + dt);
    const double mean_scale = 1.0 / (1.0 + dt);

    KineticField out(f.grid(), f.quad_ptr());
    for (std::size_t q = 0; q < f.num_nodes(); ++q) {
        // f^{n+1} = (g + beta * gbar/(1+dt)) / (1 + beta + dt)
        kernels::axpby(nc, inv_den, g.row(q).data(), beta * mean_scale * inv_den, gbar.data.data(),
                       out.row(q).data());
    }
    return out;
}

std::vector<double> moment_identity_residual(const KineticField& f_old, const KineticField& f_new,
                                             std::span<const double> planck_b, double eps, double dt,
                                             AdvectionMode mode) {
    KineticField adv(f_old.grid(), f_old.quad_ptr());
    advection_field(f_old, eps, mode, adv);
    ScalarField adv_bar = moment0_field(adv);
    ScalarField fbar_old = moment0_field(f_old);
    ScalarField fbar_new = moment0_field(f_new);
    std::vector<double> res(f_old.cells());
    for (std::size_t c = 0; c < res.size(); ++c) {
        res[c] = fbar_new.data[c] - fbar_old.data[c] +
                 dt * (adv_bar.data[c] - planck_b[c] + fbar_new.data[c]);
    }
    return res;
}

KineticTrajectory advance_kinetic(
    const KineticField& f0,
    const std::function<std::vector<double>(double)>& planck_b_at, const EpsilonParams& params,
    AdvectionMode mode, std::span<const double> snapshot_times) {
    params.validate();
    const PeriodicGrid& grid = f0.grid();
    double dt_max = kinetic_max_dt(f0.quad(), grid, params.eps, mode);
    double dt = params.policy.kind == DtPolicyKind::Fixed ? params.policy.value
                                                          : params.policy.value * dt_max;
    if (dt > dt_max * (1.0 + 1e-12))
        throw CflError("transport", "kinetic step rejected: dt = " + std::to_string(dt),
                       0.9 * dt_max);
    if (mode == AdvectionMode::Upwind &&
        imex_positivity_coefficient(f0.quad(), grid, params.eps, dt) < -1e-14)
        throw CflError("transport", "upwind update loses coefficient nonnegativity", 0.9 * dt_max);

    KineticTrajectory traj;
    traj.dt_nominal = dt;
    traj.cfl_used = dt / dt_max;

    std::vector<double> snaps(snapshot_times.begin(), snapshot_times.end());
    std::sort(snaps.begin(), snaps.end());
    if (snaps.empty() || snaps.back() < params.t_end) snaps.push_back(params.t_end);

    KineticField f = f0;
    double t = 0.0;
    std::size_t next_snap = 0;
    while (next_snap < snaps.size() && snaps[next_snap] <= 0.0) {
        traj.times.push_back(t);
        traj.snapshots.push_back(f);
        ++next_snap;
    }
    // Initial-layer ramp: the first steps resolve the relaxation scale eps^2
    // and double up to the nominal step, so the explicit advection never
    // applies the pre-layer anisotropy flux across an unresolved layer.
    double dt_current = std::min(dt, 0.5 * params.eps * params.eps);
    while (next_snap < snaps.size()) {
        double target = std::min(snaps[next_snap], params.t_end);
        while (t < target - 1e-13 * params.t_end) {
            double step = std::min(dt_current, target - t);
            f = imex_step(f, planck_b_at(t), params.eps, step, mode);
            t += step;
            ++traj.steps;
            dt_current = std::min(dt, 2.0 * dt_current);
        }
        t = target;
        traj.times.push_back(t);
        traj.snapshots.push_back(f);
        ++next_snap;
        if (target >= params.t_end) break;
    }
    return traj;
}

// ---------------------------------------------------------------------------
// Picard / characteristics

PicardResult picard_solve(const LinearTransportProblem& problem, double t_end, int n_iterations,
                          std::size_t panels, double requested_tol) {
    if (!(t_end > 0.0)) throw NumericError("picard", "t_end must be positive");
    if (n_iterations < 1) throw NumericError("picard", "need at least one iteration");
    const double eps = problem.eps;
    const double a = 1.0 + eps * eps;
    const double tau_end = t_end / (eps * eps);

    if (panels == 0)
        panels = static_cast<std::size_t>(
            std::min(1e6, std::max(64.0, std::ceil(8.0 * tau_end))));
    const double dtau = tau_end / static_cast<double>(panels);

    const PeriodicGrid& grid = problem.h.grid();
    const auto quad = problem.h.quad_ptr();
    const std::size_t nc = grid.cells();
    const std::size_t nq = quad->size();

    if ((panels + 1) * nq * nc > 200'000'000)
        throw NumericError("picard", "time-quadrature history too large; reduce panels or grid");

    PicardDiagnostics diag;
    diag.tau_end = tau_end;
    diag.panels = panels;
    diag.h_sup = kinetic_norms(problem.h).linf;

    // Source fields at panel midpoints are sampled on the fly each sweep.
    KineticField source_mid(grid, quad);
    const bool has_source = static_cast<bool>(problem.source);

    // Full history of the previous iterate at grid times (for sup diffs),
    // and its angular means (for the Duhamel integrand).
    std::vector<KineticField> prev_hist(panels + 1, KineticField(grid, quad));
    std::vector<ScalarField> prev_mean(panels + 1, ScalarField(grid, 0.0));
    // f_0 = 0 everywhere.

    const double decay_panel = std::exp(-a * dtau);
    const double decay_half = std::exp(-a * 0.5 * dtau);

    std::vector<KineticField> hist(panels + 1, KineticField(grid, quad));
    KineticField integral(grid, quad);

    for (int k = 1; k <= n_iterations; ++k) {
        hist[0] = problem.h;
        std::fill(integral.values().begin(), integral.values().end(), 0.0);
        double sup_diff = kinetic_norms(problem.h).linf;  // vs prev at tau=0 handled below
        if (k > 1) {
            sup_diff = 0.0;  // histories share the tau=0 value from k>=1 on
        }

        for (std::size_t i = 0; i < panels; ++i) {
            double tau_next = (i + 1) * dtau;
            double tau_mid = (i + 0.5) * dtau;
            if (has_source) problem.source(eps * eps * tau_mid, source_mid);

            for (std::size_t q = 0; q < nq; ++q) {
                const Vec3& w = quad->node(q);
                auto out = integral.row(q);
                // Foot points for the one-panel advection and the midpoint.
                Vec3 shift_full{-eps * dtau * w[0], -eps * dtau * w[1], -eps * dtau * w[2]};
                Vec3 shift_half{-0.5 * eps * dtau * w[0], -0.5 * eps * dtau * w[1],
                                -0.5 * eps * dtau * w[2]};
                // March in place: need the old row for interpolation, so copy.
                std::vector<double> old_row(out.begin(), out.end());
                const ScalarField& mean_lo = prev_mean[i];
                const ScalarField& mean_hi = prev_mean[i + 1];
                for (std::size_t c = 0; c < nc; ++c) {
                    Vec3 x = grid.cell_center(c);
                    Vec3 x_full{x[0] + shift_full[0], x[1] + shift_full[1], x[2] + shift_full[2]};
                    Vec3 x_half{x[0] + shift_half[0], x[1] + shift_half[1], x[2] + shift_half[2]};
                    double carried = decay_panel * interpolate_row(grid, old_row, x_full);
                    double mid = 0.5 * (interpolate_row(grid, mean_lo.data, x_half) +
                                        interpolate_row(grid, mean_hi.data, x_half));
                    if (has_source) {
                        double src = interpolate_row(grid, source_mid.row(q), x_half);
                        diag.source_sup = std::max(diag.source_sup, std::fabs(src));
                        mid += src;
                    }
                    out[c] = carried + dtau * decay_half * mid;
                }
            }

            // f_k(tau_{i+1}) = decayed initial datum along characteristics + integral
            KineticField& fk = hist[i + 1];
            double h_decay = std::exp(-a * tau_next);
            for (std::size_t q = 0; q < nq; ++q) {
                const Vec3& w = quad->node(q);
                auto out = fk.row(q);
                auto integ = integral.row(q);
                for (std::size_t c = 0; c < nc; ++c) {
                    Vec3 x = grid.cell_center(c);
                    Vec3 foot{x[0] - eps * tau_next * w[0], x[1] - eps * tau_next * w[1],
                              x[2] - eps * tau_next * w[2]};
                    out[c] = h_decay * interpolate_row(grid, problem.h.row(q), foot) + integ[c];
                }
            }

            // sup difference against the previous iterate at this time
            double local = 0.0;
            const auto& prev_vals = prev_hist[i + 1].values();
            const auto& new_vals = fk.values();
            for (std::size_t j = 0; j < new_vals.size(); ++j) {
                if (!std::isfinite(new_vals[j]))
                    throw NumericError("picard",
                                       "non-finite value at iteration " + std::to_string(k) +
                                           ", panel " + std::to_string(i + 1) + ", entry " +
                                           std::to_string(j));
                local = std::max(local, std::fabs(new_vals[j] - prev_vals[j]));
            }
            sup_diff = std::max(sup_diff, local);
        }

        diag.sup_diffs.push_back(sup_diff);
        if (diag.sup_diffs.size() >= 2) {
            double prev = diag.sup_diffs[diag.sup_diffs.size() - 2];
            if (prev > 1e-300) diag.ratios.push_back(sup_diff / prev);
        }

        std::swap(prev_hist, hist);
        for (std::size_t i = 0; i <= panels; ++i) prev_mean[i] = moment0_field(prev_hist[i]);
    }

    for (std::size_t i = 0; i <= panels; ++i)
        diag.f_sup = std::max(diag.f_sup, kinetic_norms(prev_hist[i]).linf);

    if (requested_tol > 0.0 && !diag.sup_diffs.empty() && diag.sup_diffs.back() > requested_tol) {
        diag.tolerance_met = false;
        diag.warning = "last Picard correction " + std::to_string(diag.sup_diffs.back()) +
                       " above requested tolerance " + std::to_string(requested_tol);
    }

    PicardResult result{prev_hist[panels], std::move(diag)};
    return result;
}

LinftyBoundCheck linfty_bound(const PicardDiagnostics& diag, double eps) {
    LinftyBoundCheck check;
    double a = 1.0 + eps * eps;
    check.bound = a / (eps * eps) * (diag.h_sup + diag.source_sup);
    check.observed = diag.f_sup;
    check.slack = check.bound - check.observed;
    check.holds = check.slack >= -1e-12 * std::max(1.0, check.bound);
    return check;
}

}  // namespace raddiff
