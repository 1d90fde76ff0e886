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

#include "raddiff/fields.hpp"

namespace raddiff {

// Finite-volume solver for the compressible Euler subsystem with radiative
// sources. The gas law is e = theta, P = rho*theta (C_V = R = 1), which
// makes the effective adiabatic index gamma = 2 and the sound speed
// sqrt(2*theta). Total energy E = rho|u|^2/2 + rho*theta is evolved in
// conservative form; the work term of the temperature equation cancels
// against the momentum-source work, so the energy source is just
// fbar - B(theta).

struct ConservativeState {
    ConservativeState() : grid(1, 4) {}
    explicit ConservativeState(const PeriodicGrid& g)
        : grid(g), rho(g.cells(), 1.0), m(), energy(g.cells(), 1.0) {
        for (auto& c : m) c.assign(g.cells(), 0.0);
    }

    PeriodicGrid grid;
    std::vector<double> rho;
    std::array<std::vector<double>, 3> m;  // momentum rho*u
    std::vector<double> energy;            // rho|u|^2/2 + rho*theta
};

struct RadiativeSources {
    RadiativeSources() : grid(1, 4) {}
    explicit RadiativeSources(const PeriodicGrid& g) : grid(g), s_e(g.cells(), 0.0) {
        for (auto& c : s_f) c.assign(g.cells(), 0.0);
    }

    PeriodicGrid grid;
    std::array<std::vector<double>, 3> s_f;  // momentum source
    std::vector<double> s_e;                 // energy source fbar - B(theta)
};

ConservativeState primitive_to_conservative(const FluidState& prim);
/// Throws StateError (naming the cell) if rho or internal energy is nonpositive.
FluidState conservative_to_primitive(const ConservativeState& cons);

/// Largest stable step for the Rusanov flux at the current state.
double fluid_max_dt(const ConservativeState& state);

struct FluxOptions {
    bool muscl = false;  // minmod-limited second-order reconstruction
};

/// One forward-Euler Rusanov (local Lax-Friedrichs) flux step. Total mass
/// is conserved exactly by telescoping. Throws CflError when dt exceeds the
/// stable step, with a suggested dt.
ConservativeState rusanov_flux_step(const ConservativeState& state, double dt,
                                    const FluxOptions& opts = {});

/// m += dt * S_F ; E += dt * S_E. Zero sources reduce to the identity.
void apply_sources(ConservativeState& state, const RadiativeSources& sources, double dt);

/// S_F = (1/eps + eps) <w (f - fbar)> and S_E = fbar - B(theta).
RadiativeSources radiative_sources(const KineticField& f, const ScalarField& fbar,
                                   std::span<const double> planck_b, double eps);

}  // namespace raddiff
