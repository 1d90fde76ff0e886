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

#include <array>
#include <stdexcept>
#include <string>

namespace raddiff {

inline constexpr const char* kVersion = "raddiff 0.1.0";

using Vec3 = std::array<double, 3>;

/// Bad or inconsistent run configuration (exit code 2 at the CLI).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error("config: " + msg) {}
};

/// Numerical failure during a solve (exit code 3 at the CLI). The message
/// names the module and, where meaningful, the step index.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& module, const std::string& msg)
        : std::runtime_error(module + ": " + msg) {}
};

/// A state left the physically admissible set (rho <= 0, internal energy <= 0, ...).
class StateError : public NumericError {
public:
    StateError(const std::string& module, const std::string& msg) : NumericError(module, msg) {}
};

/// Time step rejected by a stability condition. Carries a usable step size.
class CflError : public NumericError {
public:
    CflError(const std::string& module, const std::string& msg, double suggested)
        : NumericError(module, msg + " (suggested dt <= " + std::to_string(suggested) + ")"),
          suggested_dt(suggested) {}
    double suggested_dt;
};

}  // namespace raddiff
