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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "raddiff/fields.hpp"

namespace raddiff {

// Two solvers for the scaled kinetic equation
//
//   eps^2 df/dt + eps w.grad f + (f - fbar) + eps^2 f = F,
//
// a Picard/characteristics scheme used as a verification oracle, and an
// IMEX production stepper whose stiff relaxation is implicit (closed form,
// no linear solve) and therefore uniformly stable in eps.

enum class DtPolicyKind { Fixed, Cfl };

struct DtPolicy {
    DtPolicyKind kind = DtPolicyKind::Cfl;
    double value = 0.5;  // dt for Fixed, the CFL number c for Cfl

    static DtPolicy fixed(double dt) { return {DtPolicyKind::Fixed, dt}; }
    static DtPolicy cfl(double c) { return {DtPolicyKind::Cfl, c}; }
};

/// The scaling parameter and time-step policy. With the Cfl policy the
/// explicit-advection step is dt = c * eps * h.
struct EpsilonParams {
    double eps = 1.0;
    DtPolicy policy{};
    double t_end = 1.0;

    void validate() const;
};

/// How the advection term (1/eps) w.grad f is discretized.
///
/// Upwind: sign-upwinded differences on f itself. Monotone and positivity
/// preserving at CFL <= 1, but its numerical diffusion scales like
/// h<|w_a|>/(2 eps) and overwhelms the physical 1/3 coefficient once
/// eps <~ h, so it is not usable for the small-eps sweeps.
///
/// MeanSplit: central differences on the angular mean plus upwind on the
/// fluctuation f - fbar. The central part contributes no O(h/eps) error
/// (odd moments vanish), the upwinded part acts on an O(eps) quantity, and
/// the leading upwind defect integrates to zero by parity, which makes the
/// scheme uniformly accurate in eps. Used by the convergence sweeps.
///
/// FrozenLimitFlux: advection evaluated on fbar through the flux closure
/// f ~ fbar - eps w.grad fbar, giving (1/eps) w.grad fbar minus
/// w.grad(w.grad fbar). The time step is then independent of eps (parabolic
/// bound only); this is the mode for the eps = 1e-6 AP consistency check.
enum class AdvectionMode { Upwind, MeanSplit, FrozenLimitFlux };

AdvectionMode advection_mode_from_name(const std::string& name);
std::string advection_mode_name(AdvectionMode mode);

/// Largest stable kinetic step for the given mode.
double kinetic_max_dt(const AngularQuadrature& quad, const PeriodicGrid& grid, double eps,
                      AdvectionMode mode);

/// Worst-case center coefficient of the explicit upwind update,
/// 1 - dt/(eps h) * max_q sum_a |w_qa|. Nonnegative iff the upwind-mode
/// update is a convex combination of nonnegative inputs.
double imex_positivity_coefficient(const AngularQuadrature& quad, const PeriodicGrid& grid,
                                   double eps, double dt);

/// One IMEX step: explicit advection and explicit Planck source B(theta^n)
/// per cell, implicit relaxation and damping solved in closed form:
///   g = f^n - dt*ADV + dt*B,  fbar^{n+1} = gbar/(1+dt),
///   f^{n+1} = (g + (dt/eps^2) fbar^{n+1}) / (1 + dt/eps^2 + dt).
KineticField imex_step(const KineticField& f, std::span<const double> planck_b, double eps,
                       double dt, AdvectionMode mode = AdvectionMode::Upwind);

/// Per-cell residual of the discrete moment equation implied by one step,
///   (fbar^{n+1} - fbar^n) + dt [ <ADV> - B + fbar^{n+1} ],
/// recomputed from independent moments. Rounding-level for any mode.
std::vector<double> moment_identity_residual(const KineticField& f_old, const KineticField& f_new,
                                             std::span<const double> planck_b, double eps, double dt,
                                             AdvectionMode mode = AdvectionMode::Upwind);

struct KineticTrajectory {
    std::vector<double> times;
    std::vector<KineticField> snapshots;
    double dt_nominal = 0.0;
    double cfl_used = 0.0;  // dt_nominal / kinetic_max_dt
    std::size_t steps = 0;
};

/// Time loop over imex_step with an exact-landing snapshot schedule.
/// planck_b_at(t) supplies B(theta) per cell at the sub-step start time.
KineticTrajectory advance_kinetic(
    const KineticField& f0,
    const std::function<std::vector<double>(double)>& planck_b_at, const EpsilonParams& params,
    AdvectionMode mode, std::span<const double> snapshot_times);

// ---------------------------------------------------------------------------
// Picard / characteristics oracle: the Duhamel iteration for the linear
// transport equation, contraction factor 1/(1+eps^2).

/// Time-dependent source F(t); fills a kinetic field sampled at time t.
using TimeSource = std::function<void(double t, KineticField& out)>;

struct LinearTransportProblem {
    KineticField h;       // initial datum
    TimeSource source;    // null means F = 0
    double eps = 1.0;
};

struct PicardDiagnostics {
    std::vector<double> sup_diffs;  // ||v_k||_inf, k = 1..n_iterations
    std::vector<double> ratios;     // consecutive sup-diff ratios
    double h_sup = 0.0;             // ||h||_inf
    double source_sup = 0.0;        // max |F| over sampled panels
    double f_sup = 0.0;             // max |f| over the final iterate's history
    double tau_end = 0.0;
    std::size_t panels = 0;
    bool tolerance_met = true;
    std::string warning;
};

struct PicardResult {
    KineticField f;  // final iterate at t_end
    PicardDiagnostics diag;
};

/// Runs n_iterations of the Picard recursion
///   f_k(t) = h(x - eps tau w) e^{-(1+eps^2) tau}
///          + int_0^tau (fbar_{k-1} + F)(foot) e^{-(1+eps^2)(tau-s)} ds,
/// tau = t/eps^2, with multilinear spatial interpolation at characteristic
/// foot points and composite midpoint quadrature in s (marched through the
/// exponential-kernel semigroup recurrence, so one sweep costs O(panels)).
/// panels = 0 selects max(64, 8*tau_end) capped at 1e6.
PicardResult picard_solve(const LinearTransportProblem& problem, double t_end, int n_iterations,
                          std::size_t panels = 0, double requested_tol = 0.0);

struct LinftyBoundCheck {
    bool holds = false;
    double bound = 0.0;     // ((1+eps^2)/eps^2) (||h|| + ||F||)
    double observed = 0.0;  // max |f| over the solve history
    double slack = 0.0;
};

/// Checks the sup bound ((1+eps^2)/eps^2)(||h|| + ||F||) against a finished solve.
LinftyBoundCheck linfty_bound(const PicardDiagnostics& diag, double eps);

}  // namespace raddiff
