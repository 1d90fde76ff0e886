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
#pragma once

#include <string>
#include <vector>

#include "raddiff/fluid.hpp"
#include "raddiff/transport.hpp"

namespace raddiff {

// Strang-split time integration of the full coupled system: half fluid step
// (fluxes plus radiative sources frozen at sub-step start), full kinetic
// IMEX step seeing the updated temperature, half fluid step with refreshed
// radiation moments. The splitting order keeps the global radiative
// equilibrium an exact discrete fixed point.

struct CoupledState {
    FluidState fluid;
    KineticField radiation;
    double time = 0.0;
};

struct CoupledOptions {
    AdvectionMode advection = AdvectionMode::Upwind;
    double c_planck = 1.0;
    FluxOptions flux{};
    std::string dump_dir;  // when set, a failing state is snapshotted here
};

/// Integrals of the discretely conserved quantities: total mass, the
/// radiation-corrected momentum sum(rho u + eps <w f>) h^dim, and total
/// energy sum(rho|u|^2/2 + rho theta + fbar) h^dim. The continuous system
/// conserves all three exactly (divergences telescope on the torus and the
/// fbar - B exchange cancels between fluid energy and radiation).
struct InvariantSample {
    double t = 0.0;
    double mass = 0.0;
    Vec3 momentum_rad{0.0, 0.0, 0.0};
    double energy_total = 0.0;
};

struct InvariantLedger {
    std::vector<InvariantSample> samples;

    double mass_drift_rel() const;
    double energy_drift_rel() const;
    /// Max over time and components of |momentum(t) - momentum(0)|.
    double momentum_drift_abs() const;
};

InvariantSample measure_invariants(const CoupledState& state, double eps);
InvariantLedger invariant_report(const std::vector<CoupledState>& trajectory, double eps);

/// One Strang step. Rejects dt violating either sub-solver's stability
/// bound (the error names the failing sub-solver).
CoupledState step_coupled(const CoupledState& state, const EpsilonParams& params, double dt,
                          const CoupledOptions& opts);

struct CoupledTrajectory {
    std::vector<double> times;
    std::vector<CoupledState> snapshots;
    InvariantLedger ledger;
    double dt_nominal = 0.0;
    std::size_t steps = 0;
    double wall_seconds = 0.0;
};

/// Deterministic time loop with exact-landing snapshots; the ledger is
/// sampled at every snapshot time.
CoupledTrajectory run_coupled(const CoupledState& initial, const EpsilonParams& params,
                              const CoupledOptions& opts, std::span<const double> snapshot_times);

}  // namespace raddiff
