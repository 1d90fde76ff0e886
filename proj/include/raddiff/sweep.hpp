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

#include <map>

#include "raddiff/config.hpp"
#include "raddiff/coupled.hpp"
#include "raddiff/fit.hpp"
#include "raddiff/limit.hpp"

namespace raddiff {

// The epsilon sweep runs the coupled solver and the limit solver from
// identical data for every eps in the (strictly decreasing) list, measures
// the discrepancy norms of the convergence statements, the layer-corrected
// remainder and the flux-limit residual, and fits observed orders by
// log-log least squares.

/// Discrepancy of one field against the limit trajectory: final-time L2 and
/// Linf plus max-over-time L2, unwindowed and with the layer window
/// [0, K eps^2] excluded.
struct ErrorStats {
    double l2 = 0.0;
    double linf = 0.0;
    double l2_max = 0.0;
    double l2_max_windowed = 0.0;
};

struct EpsilonRow {
    double eps = 0.0;
    ErrorStats fbar, theta, u, rho;
    // Remainder f_eps - fbar - f_I0 maxima.
    double remainder_linf_max = 0.0, remainder_linf_max_windowed = 0.0;
    // Flux-limit residual at the configured diagnostic time.
    double flux_residual_l2 = 0.0;
    // Invariant drifts over the run.
    double mass_drift_rel = 0.0, energy_drift_rel = 0.0, momentum_drift_abs = 0.0;
    double dt = 0.0;
    std::size_t steps = 0;
};

struct ConvergenceReport {
    std::vector<EpsilonRow> rows;
    std::map<std::string, FitResult> fits;
    double time_compared = 0.0;
    double flux_time = 0.0;
    double limit_dt = 0.0;
    std::string config_hash;
    std::string version;
};

/// Aborted sweep; carries whatever rows completed.
class SweepAborted : public NumericError {
public:
    SweepAborted(const std::string& msg, ConvergenceReport partial)
        : NumericError("sweep", msg), partial_report(std::move(partial)) {}
    ConvergenceReport partial_report;
};

ConvergenceReport epsilon_sweep(const RunConfig& cfg);

// Initial-layer sweep: short runs resolving tau = t/eps^2 up to tau_max,
// remainder diagnostics per eps, and the raw-anisotropy comparison
// f_eps - fbar_eps against e^{-1}(h - hbar) at tau = 1.
struct LayerRow {
    double eps = 0.0;
    double remainder_linf_max = 0.0;
    double remainder_linf_max_windowed = 0.0;
    double aniso_rel_error_tau1 = 0.0;
    RemainderSeries series;
};

struct LayerReport {
    std::vector<LayerRow> rows;
    double tau_max = 0.0;
    std::string config_hash;
    std::string version;
};

LayerReport layer_sweep(const RunConfig& cfg);

}  // namespace raddiff
