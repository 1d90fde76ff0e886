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

#include "raddiff/fields.hpp"

namespace raddiff {

// Field snapshots: one JSON header line with grid/quadrature metadata,
// followed by either CSV rows (cell,angle,value) or raw little-endian
// doubles. Values round-trip bit-exactly in both formats (CSV uses 17
// significant digits).

enum class SnapshotFormat { Csv, Binary };

SnapshotFormat snapshot_format_from_name(const std::string& name);

void save_kinetic_snapshot(const KineticField& f, double time, const std::string& path,
                           SnapshotFormat format);
KineticField load_kinetic_snapshot(const std::string& path, double* time_out = nullptr);

void save_scalar_snapshot(const ScalarField& f, double time, const std::string& path,
                          SnapshotFormat format);
ScalarField load_scalar_snapshot(const std::string& path, double* time_out = nullptr);

/// Formats a double with full round-trip precision (%.17g).
std::string format_double(double v);

}  // namespace raddiff
