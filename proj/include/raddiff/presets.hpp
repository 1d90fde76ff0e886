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

#include <memory>
#include <string>

#include "raddiff/fields.hpp"

namespace raddiff {

/// Initial-condition preset parameters. Amplitudes left NaN pick up the
/// preset's own defaults. Every preset keeps rho, theta and h strictly
/// positive; the realized lower bound is reported alongside the state.
struct IcParams {
    std::string preset = "smooth-1d";
    double rho_amp = kUnset;
    double theta_amp = kUnset;
    double u_amp = kUnset;
    double fbar_amp = kUnset;
    double aniso = kUnset;

    static constexpr double kUnset = -1.0e308;
};

struct PresetState {
    FluidState fluid;
    KineticField radiation;
    double positivity_lower_bound = 0.0;  // the constant "a" of the hypotheses
};

/// Shipped presets: `equilibrium` (exact fixed point of the coupled and
/// limit systems), `smooth-1d` (trigonometric fluid perturbations with a
/// mildly anisotropic h), `isotropic-h` (same fluid, h = hbar so the layer
/// vanishes) and `layer-probe` (strong anisotropy for short layer runs).
PresetState make_preset(const IcParams& ic, const PeriodicGrid& grid,
                        std::shared_ptr<const AngularQuadrature> quad, double c_planck);

bool preset_exists(const std::string& name);

}  // namespace raddiff
