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

#include <vector>

#include "raddiff/fluid.hpp"
#include "raddiff/transport.hpp"

namespace raddiff {

// Solver for the limiting system: Euler with momentum source -(1/3) grad
// fbar and energy source fbar - B(theta), coupled to the parabolic
// radiative-density equation
//
//   d fbar/dt - (1/3) Lap fbar + fbar = B(theta),
//
// advanced by implicit Euler (unconditionally stable) through a matrix-free
// conjugate-gradient solve of (1+dt) I - (dt/3) Lap_h. B uses the fluid's
// post-sub-step temperature so that the uniform radiative equilibrium is an
// exact discrete fixed point.

struct LimitState {
    LimitState() = default;
    LimitState(FluidState f, ScalarField fb, double t = 0.0)
        : fluid(std::move(f)), fbar(std::move(fb)), time(t) {}

    FluidState fluid;
    ScalarField fbar;
    double time = 0.0;
};

struct LimitOptions {
    double c_planck = 1.0;
    FluxOptions flux{};
    double cg_rel_tol = 1e-10;
    int cg_max_iters = 5000;
};

/// Implicit solve of ((1+dt) I - (dt/3) Lap_h) out = fbar + dt * b.
/// Throws NumericError with the residual if CG fails to converge.
ScalarField fbar_implicit_step(const ScalarField& fbar, std::span<const double> planck_b, double dt,
                               double rel_tol = 1e-10, int max_iters = 5000);

LimitState limit_step(const LimitState& state, double dt, const LimitOptions& opts);

struct LimitTrajectory {
    std::vector<double> times;
    std::vector<LimitState> snapshots;
    std::size_t steps = 0;
};

LimitTrajectory run_limit(const LimitState& initial, double t_end, double dt,
                          const LimitOptions& opts, std::span<const double> snapshot_times);

// ---------------------------------------------------------------------------
// Initial layer: f_I0(tau) = e^{-tau} (h - hbar), tau = t/eps^2. Its angular
// mean vanishes identically.

struct InitialLayer {
    InitialLayer() = default;
    explicit InitialLayer(const KineticField& datum);

    KineticField h;
    ScalarField hbar;
};

/// e^{-tau} (h - hbar) nodewise; throws on tau < 0.
KineticField initial_layer_eval(const InitialLayer& layer, double tau);

// ---------------------------------------------------------------------------
// Diagnostics realizing the convergence statements.

struct RemainderRow {
    double t = 0.0;
    double tau = 0.0;
    double remainder_linf = 0.0;
    double remainder_l2 = 0.0;
    double flux_residual_l2 = 0.0;
};

struct RemainderSeries {
    std::vector<RemainderRow> rows;
    double max_linf = 0.0;           // over all times
    double max_linf_windowed = 0.0;  // over t >= window_k * eps^2
    double window_k = 10.0;
};

/// Per-time norms of f_eps - fbar_limit - f_I0 along matched trajectories,
/// annotated with tau = t/eps^2. Also evaluates the flux-limit residual at
/// each time. Both windowed (layer window [0, K eps^2] excluded) and
/// unwindowed maxima are reported.
RemainderSeries remainder_diagnostic(const std::vector<double>& times,
                                     const std::vector<KineticField>& kinetic,
                                     const std::vector<ScalarField>& limit_fbar,
                                     const InitialLayer& layer, double eps, double window_k = 10.0);

struct FluxLimitDiagnostic {
    VectorField j;         // J_eps = (1/eps) <w f>
    VectorField residual;  // J_eps + (1/3) grad_h fbar_eps
    Norms residual_norms;  // norms of |residual| (vector magnitude)
};

/// Residual of the Fick-type closure J = -(1/3) grad fbar against the
/// discrete central gradient of the kinetic solution's own mean.
FluxLimitDiagnostic flux_limit_diagnostic(const KineticField& f, double eps);

}  // namespace raddiff
