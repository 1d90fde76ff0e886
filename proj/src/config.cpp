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
#include "raddiff/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace raddiff {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    char* end = nullptr;
    double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
        throw ConfigError("key '" + key + "': cannot parse number '" + value + "'");
    return v;
}

long parse_int(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': cannot parse integer '" + value + "'");
    }
    if (pos != value.size())
        throw ConfigError("key '" + key + "': cannot parse integer '" + value + "'");
    return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "on") return true;
    if (value == "false" || value == "0" || value == "off") return false;
    throw ConfigError("key '" + key + "': cannot parse boolean '" + value + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    if (out.empty()) throw ConfigError("key '" + key + "': empty list");
    return out;
}

void set_key(RunConfig& cfg, const std::string& full_key, const std::string& value) {
    if (full_key == "grid.dim") cfg.dim = static_cast<int>(parse_int(full_key, value));
    else if (full_key == "grid.cells") cfg.cells = static_cast<int>(parse_int(full_key, value));
    else if (full_key == "angular.kind") cfg.quad_kind = quadrature_kind_from_name(value);
    else if (full_key == "angular.order") cfg.quad_order = static_cast<int>(parse_int(full_key, value));
    else if (full_key == "time.t_end") cfg.t_end = parse_double(full_key, value);
    else if (full_key == "time.dt_policy") {
        if (value == "cfl") cfg.policy.kind = DtPolicyKind::Cfl;
        else if (value == "fixed") cfg.policy.kind = DtPolicyKind::Fixed;
        else throw ConfigError("time.dt_policy must be cfl or fixed, got '" + value + "'");
    } else if (full_key == "time.cfl") {
        cfg.policy.kind = DtPolicyKind::Cfl;
        cfg.policy.value = parse_double(full_key, value);
    } else if (full_key == "time.dt") {
        cfg.policy.kind = DtPolicyKind::Fixed;
        cfg.policy.value = parse_double(full_key, value);
    } else if (full_key == "time.tau_max") cfg.tau_max = parse_double(full_key, value);
    else if (full_key == "kinetic.advection") cfg.advection = advection_mode_from_name(value);
    else if (full_key == "radiation.c_planck") cfg.c_planck = parse_double(full_key, value);
    else if (full_key == "fluid.muscl") cfg.muscl = parse_bool(full_key, value);
    else if (full_key == "epsilon.list") cfg.epsilons = parse_list(full_key, value);
    else if (full_key == "ic.preset") cfg.ic.preset = value;
    else if (full_key == "ic.rho_amp") cfg.ic.rho_amp = parse_double(full_key, value);
    else if (full_key == "ic.theta_amp") cfg.ic.theta_amp = parse_double(full_key, value);
    else if (full_key == "ic.u_amp") cfg.ic.u_amp = parse_double(full_key, value);
    else if (full_key == "ic.fbar_amp") cfg.ic.fbar_amp = parse_double(full_key, value);
    else if (full_key == "ic.aniso") cfg.ic.aniso = parse_double(full_key, value);
    else if (full_key == "sweep.limit_dt") cfg.limit_dt = parse_double(full_key, value);
    else if (full_key == "sweep.window_k") cfg.window_k = parse_double(full_key, value);
    else if (full_key == "sweep.flux_time") cfg.flux_time = parse_double(full_key, value);
    else if (full_key == "output.dir") cfg.out_dir = value;
    else if (full_key == "output.format") cfg.snap_format = snapshot_format_from_name(value);
    else if (full_key == "output.snapshots") cfg.snapshots = static_cast<int>(parse_int(full_key, value));
    else if (full_key == "run.seed") cfg.seed = static_cast<std::uint64_t>(parse_int(full_key, value));
    else throw ConfigError("unrecognized key '" + full_key + "'");
}

}  // namespace

void RunConfig::validate() const {
    PeriodicGrid grid(dim, cells);  // construction checks dim/cells
    (void)grid;
    if (quad_order < 2) throw ConfigError("angular.order must be >= 2");
    if (!(t_end > 0.0)) throw ConfigError("time.t_end must be positive");
    if (!(policy.value > 0.0)) throw ConfigError("time step policy value must be positive");
    if (policy.kind == DtPolicyKind::Cfl && policy.value > 1.0)
        throw ConfigError("time.cfl must be <= 1");
    if (!(c_planck > 0.0)) throw ConfigError("radiation.c_planck must be positive");
    if (epsilons.empty()) throw ConfigError("epsilon.list must not be empty");
    for (double e : epsilons)
        if (!(e > 0.0 && e <= 1.0)) throw ConfigError("every eps must lie in (0, 1]");
    for (std::size_t i = 1; i < epsilons.size(); ++i)
        if (!(epsilons[i] < epsilons[i - 1]))
            throw ConfigError("epsilon.list must be strictly decreasing");
    if (!preset_exists(ic.preset)) throw ConfigError("unknown ic.preset '" + ic.preset + "'");
    if (snapshots < 1) throw ConfigError("output.snapshots must be >= 1");
    if (!(tau_max > 0.0)) throw ConfigError("time.tau_max must be positive");
    if (!(window_k >= 0.0)) throw ConfigError("sweep.window_k must be >= 0");
    // flux_time beyond t_end falls back to the final snapshot in the sweep
    if (!(flux_time > 0.0)) throw ConfigError("sweep.flux_time must be positive");
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (section.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
        set_key(cfg, section + "." + key, value);
    }
    cfg.validate();
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
    std::size_t eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override must look like section.key=value, got '" + assignment + "'");
    std::string key = trim(assignment.substr(0, eq));
    std::string value = trim(assignment.substr(eq + 1));
    set_key(cfg, key, value);
}

std::string canonical_serialize(const RunConfig& cfg) {
    auto num = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    std::string s;
    s += "angular.kind=" + quadrature_kind_name(cfg.quad_kind) + "\n";
    s += "angular.order=" + std::to_string(cfg.quad_order) + "\n";
    s += "epsilon.list=";
    for (std::size_t i = 0; i < cfg.epsilons.size(); ++i)
        s += (i ? "," : "") + num(cfg.epsilons[i]);
    s += "\n";
    s += "fluid.muscl=" + std::string(cfg.muscl ? "true" : "false") + "\n";
    s += "grid.cells=" + std::to_string(cfg.cells) + "\n";
    s += "grid.dim=" + std::to_string(cfg.dim) + "\n";
    s += "ic.aniso=" + num(cfg.ic.aniso) + "\n";
    s += "ic.fbar_amp=" + num(cfg.ic.fbar_amp) + "\n";
    s += "ic.preset=" + cfg.ic.preset + "\n";
    s += "ic.rho_amp=" + num(cfg.ic.rho_amp) + "\n";
    s += "ic.theta_amp=" + num(cfg.ic.theta_amp) + "\n";
    s += "ic.u_amp=" + num(cfg.ic.u_amp) + "\n";
    s += "kinetic.advection=" + advection_mode_name(cfg.advection) + "\n";
    s += "output.format=" + std::string(cfg.snap_format == SnapshotFormat::Csv ? "csv" : "binary") + "\n";
    s += "output.snapshots=" + std::to_string(cfg.snapshots) + "\n";
    s += "radiation.c_planck=" + num(cfg.c_planck) + "\n";
    s += "run.seed=" + std::to_string(cfg.seed) + "\n";
    s += "sweep.flux_time=" + num(cfg.flux_time) + "\n";
    s += "sweep.limit_dt=" + num(cfg.limit_dt) + "\n";
    s += "sweep.window_k=" + num(cfg.window_k) + "\n";
    s += "time.dt_policy=" + std::string(cfg.policy.kind == DtPolicyKind::Cfl ? "cfl" : "fixed") + "\n";
    s += "time.policy_value=" + num(cfg.policy.value) + "\n";
    s += "time.t_end=" + num(cfg.t_end) + "\n";
    s += "time.tau_max=" + num(cfg.tau_max) + "\n";
    return s;
}

std::uint64_t config_hash(const RunConfig& cfg) {
    // FNV-1a over the canonical serialization.
    std::string s = canonical_serialize(cfg);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string config_hash_hex(const RunConfig& cfg) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(config_hash(cfg)));
    return buf;
}

}  // namespace raddiff
