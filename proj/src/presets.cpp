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
#include "raddiff/presets.hpp"

#include <cmath>

#include "raddiff/planck.hpp"

namespace raddiff {

namespace {

double resolve(double value, double fallback) {
    return value == IcParams::kUnset ? fallback : value;
}

}  // namespace

bool preset_exists(const std::string& name) {
    return name == "equilibrium" || name == "smooth-1d" || name == "isotropic-h" ||
           name == "layer-probe";
}

PresetState make_preset(const IcParams& ic, const PeriodicGrid& grid,
                        std::shared_ptr<const AngularQuadrature> quad, double c_planck) {
    if (!preset_exists(ic.preset))
        throw ConfigError("unknown initial-condition preset '" + ic.preset + "'");

    PresetState out{FluidState(grid), KineticField(grid, quad), 0.0};

    const bool layer_probe = ic.preset == "layer-probe";
    const bool equilibrium = ic.preset == "equilibrium";
    const bool isotropic = ic.preset == "isotropic-h" || equilibrium;

    double rho_amp = resolve(ic.rho_amp, equilibrium ? 0.0 : (layer_probe ? 0.1 : 0.2));
    double theta_amp = resolve(ic.theta_amp, equilibrium ? 0.0 : (layer_probe ? 0.1 : 0.2));
    double u_amp = resolve(ic.u_amp, (equilibrium || layer_probe) ? 0.0 : 0.1);
    double fbar_amp = resolve(ic.fbar_amp, equilibrium ? 0.0 : (layer_probe ? 0.25 : 0.3));
    double aniso = isotropic ? 0.0 : resolve(ic.aniso, layer_probe ? 0.8 : 0.5);

    if (std::fabs(rho_amp) >= 1.0 || std::fabs(theta_amp) >= 1.0)
        throw ConfigError("preset amplitudes must keep rho and theta positive");
    if (std::fabs(aniso) >= 1.0 || std::fabs(fbar_amp) >= 1.0)
        throw ConfigError("preset amplitudes must keep h positive");

    for (std::size_t c = 0; c < grid.cells(); ++c) {
        double x = grid.cell_center(c)[0];
        out.fluid.rho[c] = 1.0 + rho_amp * std::sin(x);
        out.fluid.theta[c] = 1.0 + theta_amp * std::cos(x);
        out.fluid.u[0][c] = u_amp * std::sin(x);
    }

    if (equilibrium) {
        // f = B(theta) with uniform theta: every source and gradient vanishes.
        double b = planck(1.0, c_planck);
        std::fill(out.radiation.values().begin(), out.radiation.values().end(), b);
        out.positivity_lower_bound = std::min(1.0, b);
        return out;
    }

    for (std::size_t q = 0; q < quad->size(); ++q) {
        double wx = quad->node(q)[0];
        auto row = out.radiation.row(q);
        for (std::size_t c = 0; c < grid.cells(); ++c) {
            double x = grid.cell_center(c)[0];
            double hbar = 1.0 + fbar_amp * std::sin(x);
            row[c] = hbar * (1.0 + aniso * wx);
        }
    }

    double a = 1e300;
    for (std::size_t c = 0; c < grid.cells(); ++c)
        a = std::min({a, out.fluid.rho[c], out.fluid.theta[c]});
    a = std::min(a, min_value(out.radiation));
    out.positivity_lower_bound = a;
    if (!(a > 0.0)) throw ConfigError("preset '" + ic.preset + "' violates strict positivity");
    return out;
}

}  // namespace raddiff
