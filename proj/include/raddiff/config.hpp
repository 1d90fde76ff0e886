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

#include <cstdint>
#include <string>
#include <vector>

#include "raddiff/angular.hpp"
#include "raddiff/presets.hpp"
#include "raddiff/snapshot.hpp"
#include "raddiff/transport.hpp"

namespace raddiff {

/// Run configuration. Parsed from a flat sectioned key-value file; parsing
/// is strict (any unrecognized section or key fails fast). See
/// docs in the README for the full schema.
struct RunConfig {
    // [grid]
    int dim = 1;
    int cells = 64;
    // [angular]
    QuadratureKind quad_kind = QuadratureKind::OctahedralSymmetric;
    int quad_order = 6;
    // [time]
    double t_end = 0.5;
    DtPolicy policy = DtPolicy::cfl(0.5);
    double tau_max = 20.0;  // layer runs integrate to t_end = tau_max * eps^2
    // [kinetic]
    AdvectionMode advection = AdvectionMode::MeanSplit;
    // [radiation]
    double c_planck = 1.0;
    // [fluid]
    bool muscl = false;
    // [epsilon]
    std::vector<double> epsilons{0.1, 0.05, 0.025, 0.0125};
    // [ic]
    IcParams ic{};
    // [sweep]
    double limit_dt = 0.0;  // 0 = auto
    double window_k = 10.0;
    double flux_time = 0.25;
    // [output]
    std::string out_dir = "out";
    SnapshotFormat snap_format = SnapshotFormat::Csv;
    int snapshots = 20;
    // [run]
    std::uint64_t seed = 12345;

    void validate() const;
};

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text);

/// Applies one "section.key=value" override (CLI flags beat env beat file).
void apply_override(RunConfig& cfg, const std::string& assignment);

/// Canonical flat serialization (sorted keys, %.17g floats); two configs
/// hash equal iff they serialize equal.
std::string canonical_serialize(const RunConfig& cfg);
std::uint64_t config_hash(const RunConfig& cfg);
std::string config_hash_hex(const RunConfig& cfg);

}  // namespace raddiff
