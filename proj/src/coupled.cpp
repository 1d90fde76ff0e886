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
#include "raddiff/coupled.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "raddiff/planck.hpp"
#include "raddiff/snapshot.hpp"

namespace raddiff {

namespace {

FluidState fluid_substep(const FluidState& fluid, const KineticField& radiation, double dt,
                         double eps, const CoupledOptions& opts) {
    ConservativeState cons = primitive_to_conservative(fluid);
    double dt_max = fluid_max_dt(cons);
    if (dt > dt_max * (1.0 + 1e-12))
        throw CflError("coupled/fluid", "half step dt = " + std::to_string(dt), 0.9 * dt_max);

    // Radiation moments and B(theta) frozen at sub-step start.
    ScalarField fbar = moment0_field(radiation);
    std::vector<double> b = planck_field(fluid.theta, opts.c_planck);
    RadiativeSources sources = radiative_sources(radiation, fbar, b, eps);

    cons = rusanov_flux_step(cons, dt, opts.flux);
    apply_sources(cons, sources, dt);
    return conservative_to_primitive(cons);
}

}  // namespace

CoupledState step_coupled(const CoupledState& state, const EpsilonParams& params, double dt,
                          const CoupledOptions& opts) {
    if (!(dt > 0.0)) throw NumericError("coupled", "dt must be positive");
    double kin_max = kinetic_max_dt(state.radiation.quad(), state.radiation.grid(), params.eps,
                                    opts.advection);
    if (dt > kin_max * (1.0 + 1e-12))
        throw CflError("coupled/kinetic", "step dt = " + std::to_string(dt), 0.9 * kin_max);

    CoupledState out = state;
    out.fluid = fluid_substep(state.fluid, state.radiation, 0.5 * dt, params.eps, opts);
    std::vector<double> b = planck_field(out.fluid.theta, opts.c_planck);
    out.radiation = imex_step(state.radiation, b, params.eps, dt, opts.advection);
    out.fluid = fluid_substep(out.fluid, out.radiation, 0.5 * dt, params.eps, opts);
    out.time = state.time + dt;
    return out;
}

InvariantSample measure_invariants(const CoupledState& state, double eps) {
    InvariantSample s;
    s.t = state.time;
    const PeriodicGrid& grid = state.fluid.grid;
    double vol = grid.cell_volume();
    VectorField rad_flux = moment1_field(state.radiation);
    ScalarField fbar = moment0_field(state.radiation);
    for (std::size_t c = 0; c < grid.cells(); ++c) {
        double rho = state.fluid.rho[c];
        double usq = 0.0;
        for (int a = 0; a < 3; ++a) {
            double ua = state.fluid.u[a][c];
            usq += ua * ua;
            s.momentum_rad[a] += (rho * ua + eps * rad_flux.comp[a][c]) * vol;
        }
        s.mass += rho * vol;
        s.energy_total += (0.5 * rho * usq + rho * state.fluid.theta[c] + fbar.data[c]) * vol;
    }
    return s;
}

double InvariantLedger::mass_drift_rel() const {
    if (samples.size() < 2) return 0.0;
    double ref = std::max(std::fabs(samples.front().mass), 1e-300);
    double drift = 0.0;
    for (const auto& s : samples) drift = std::max(drift, std::fabs(s.mass - samples.front().mass));
    return drift / ref;
}

double InvariantLedger::energy_drift_rel() const {
    if (samples.size() < 2) return 0.0;
    double ref = std::max(std::fabs(samples.front().energy_total), 1e-300);
    double drift = 0.0;
    for (const auto& s : samples)
        drift = std::max(drift, std::fabs(s.energy_total - samples.front().energy_total));
    return drift / ref;
}

double InvariantLedger::momentum_drift_abs() const {
    if (samples.size() < 2) return 0.0;
    double drift = 0.0;
    for (const auto& s : samples)
        for (int a = 0; a < 3; ++a)
            drift = std::max(drift,
                             std::fabs(s.momentum_rad[a] - samples.front().momentum_rad[a]));
    return drift;
}

InvariantLedger invariant_report(const std::vector<CoupledState>& trajectory, double eps) {
    InvariantLedger ledger;
    ledger.samples.reserve(trajectory.size());
    for (const auto& s : trajectory) ledger.samples.push_back(measure_invariants(s, eps));
    return ledger;
}

CoupledTrajectory run_coupled(const CoupledState& initial, const EpsilonParams& params,
                              const CoupledOptions& opts, std::span<const double> snapshot_times) {
    params.validate();
    auto t0_clock = std::chrono::steady_clock::now();

    double kin_max = kinetic_max_dt(initial.radiation.quad(), initial.radiation.grid(), params.eps,
                                    opts.advection);
    double dt = params.policy.kind == DtPolicyKind::Fixed ? params.policy.value
                                                          : params.policy.value * kin_max;

    CoupledTrajectory traj;
    traj.dt_nominal = dt;

    std::vector<double> snaps(snapshot_times.begin(), snapshot_times.end());
    std::sort(snaps.begin(), snaps.end());
    if (snaps.empty() || snaps.front() > 0.0) snaps.insert(snaps.begin(), 0.0);
    if (snaps.back() < params.t_end) snaps.push_back(params.t_end);

    CoupledState state = initial;
    state.time = 0.0;
    // Initial-layer ramp as in advance_kinetic: resolve the eps^2 relaxation
    // scale first, then double up to the nominal step.
    double dt_current = std::min(dt, 0.5 * params.eps * params.eps);
    try {
        for (double target : snaps) {
            target = std::min(target, params.t_end);
            while (state.time < target - 1e-13 * params.t_end) {
                double step = std::min(dt_current, target - state.time);
                try {
                    state = step_coupled(state, params, step, opts);
                } catch (const StateError& err) {
                    throw StateError("coupled", std::string(err.what()) + " at step " +
                                                    std::to_string(traj.steps) + ", t = " +
                                                    std::to_string(state.time));
                }
                ++traj.steps;
                dt_current = std::min(dt, 2.0 * dt_current);
            }
            state.time = target;
            traj.times.push_back(target);
            traj.snapshots.push_back(state);
            if (target >= params.t_end) break;
        }
    } catch (const StateError&) {
        if (!opts.dump_dir.empty()) {
            save_kinetic_snapshot(state.radiation, state.time,
                                  opts.dump_dir + "/failed_radiation.snap", SnapshotFormat::Csv);
            ScalarField theta(state.fluid.grid);
            theta.data = state.fluid.theta;
            save_scalar_snapshot(theta, state.time, opts.dump_dir + "/failed_theta.snap",
                                 SnapshotFormat::Csv);
        }
        throw;
    }

    traj.ledger = invariant_report(traj.snapshots, params.eps);
    traj.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_clock).count();
    return traj;
}

}  // namespace raddiff
