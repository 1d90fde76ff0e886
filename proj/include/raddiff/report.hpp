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

#include "raddiff/sweep.hpp"

namespace raddiff {

// Deterministic report emission: every CSV starts with a comment line
// carrying the config hash and code version, then a header row naming the
// columns. Floats are printed with %.17g, so identical configs produce
// byte-identical files.

std::string ledger_csv_text(const InvariantLedger& ledger, const std::string& config_hash);
std::string convergence_csv_text(const ConvergenceReport& report);
std::string convergence_json_text(const ConvergenceReport& report);
std::string layer_csv_text(const LayerReport& report);
std::string layer_json_text(const LayerReport& report);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace raddiff
