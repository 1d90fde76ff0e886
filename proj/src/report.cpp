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
#include "raddiff/report.hpp"

#include <fstream>

#include <json.hpp>

#include "raddiff/snapshot.hpp"

namespace raddiff {

using nlohmann::json;

namespace {

std::string provenance_line(const std::string& config_hash) {
    return "# config=" + config_hash + " " + std::string(kVersion) + "\n";
}

json fit_json(const FitResult& fit) {
    json j;
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["residual"] = fit.residual;
    j["monotone"] = fit.monotone;
    j["indeterminate"] = fit.indeterminate;
    return j;
}

}  // namespace

std::string ledger_csv_text(const InvariantLedger& ledger, const std::string& config_hash) {
    std::string s = provenance_line(config_hash);
    s += "t,mass,momentum_rad_x,momentum_rad_y,momentum_rad_z,energy_total\n";
    for (const auto& row : ledger.samples) {
        s += format_double(row.t) + ',' + format_double(row.mass) + ',' +
             format_double(row.momentum_rad[0]) + ',' + format_double(row.momentum_rad[1]) + ',' +
             format_double(row.momentum_rad[2]) + ',' + format_double(row.energy_total) + '\n';
    }
    return s;
}

std::string convergence_csv_text(const ConvergenceReport& report) {
    std::string s = provenance_line(report.config_hash);
    s += "eps";
    for (const char* field : {"fbar", "theta", "u", "rho"}) {
        for (const char* stat : {"_l2", "_linf", "_l2_max", "_l2_max_windowed"})
            s += std::string(",") + field + stat;
    }
    s += ",remainder_linf_max,remainder_linf_max_windowed,flux_residual_l2"
         ",mass_drift_rel,energy_drift_rel,momentum_drift_abs,dt,steps\n";
    for (const auto& r : report.rows) {
        s += format_double(r.eps);
        for (const ErrorStats* e : {&r.fbar, &r.theta, &r.u, &r.rho}) {
            s += ',' + format_double(e->l2) + ',' + format_double(e->linf) + ',' +
                 format_double(e->l2_max) + ',' + format_double(e->l2_max_windowed);
        }
        s += ',' + format_double(r.remainder_linf_max) + ',' +
             format_double(r.remainder_linf_max_windowed) + ',' +
             format_double(r.flux_residual_l2) + ',' + format_double(r.mass_drift_rel) + ',' +
             format_double(r.energy_drift_rel) + ',' + format_double(r.momentum_drift_abs) + ',' +
             format_double(r.dt) + ',' + std::to_string(r.steps) + '\n';
    }
    return s;
}

std::string convergence_json_text(const ConvergenceReport& report) {
    json j;
    j["config"] = report.config_hash;
    j["version"] = report.version;
    j["time_compared"] = report.time_compared;
    j["flux_time"] = report.flux_time;
    j["limit_dt"] = report.limit_dt;
    j["rows"] = json::array();
    auto stats_json = [](const ErrorStats& e) {
        json s;
        s["l2"] = e.l2;
        s["linf"] = e.linf;
        s["l2_max"] = e.l2_max;
        s["l2_max_windowed"] = e.l2_max_windowed;
        return s;
    };
    for (const auto& r : report.rows) {
        json row;
        row["eps"] = r.eps;
        row["fbar"] = stats_json(r.fbar);
        row["theta"] = stats_json(r.theta);
        row["u"] = stats_json(r.u);
        row["rho"] = stats_json(r.rho);
        row["remainder_linf_max"] = r.remainder_linf_max;
        row["remainder_linf_max_windowed"] = r.remainder_linf_max_windowed;
        row["flux_residual_l2"] = r.flux_residual_l2;
        row["mass_drift_rel"] = r.mass_drift_rel;
        row["energy_drift_rel"] = r.energy_drift_rel;
        row["momentum_drift_abs"] = r.momentum_drift_abs;
        row["dt"] = r.dt;
        row["steps"] = r.steps;
        j["rows"].push_back(row);
    }
    j["fits"] = json::object();
    for (const auto& [name, fit] : report.fits) j["fits"][name] = fit_json(fit);
    return j.dump(2) + "\n";
}

std::string layer_csv_text(const LayerReport& report) {
    std::string s = provenance_line(report.config_hash);
    s += "eps,t,tau,remainder_Linf,remainder_L2,flux_residual_L2\n";
    for (const auto& row : report.rows) {
        for (const auto& r : row.series.rows) {
            s += format_double(row.eps) + ',' + format_double(r.t) + ',' + format_double(r.tau) +
                 ',' + format_double(r.remainder_linf) + ',' + format_double(r.remainder_l2) +
                 ',' + format_double(r.flux_residual_l2) + '\n';
        }
    }
    return s;
}

std::string layer_json_text(const LayerReport& report) {
    json j;
    j["config"] = report.config_hash;
    j["version"] = report.version;
    j["tau_max"] = report.tau_max;
    j["rows"] = json::array();
    for (const auto& r : report.rows) {
        json row;
        row["eps"] = r.eps;
        row["remainder_linf_max"] = r.remainder_linf_max;
        row["remainder_linf_max_windowed"] = r.remainder_linf_max_windowed;
        row["aniso_rel_error_tau1"] = r.aniso_rel_error_tau1;
        j["rows"].push_back(row);
    }
    return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw NumericError("report", "cannot write '" + path + "'");
    out << text;
}

}  // namespace raddiff
