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

#include <span>
#include <vector>

#include "raddiff/common.hpp"

namespace raddiff {

/// Frequency-integrated equilibrium radiation B(theta) = C * theta^4.
/// Default C = 1. Throws on theta <= 0.
double planck(double theta, double c_planck = 1.0);

/// B(theta) per cell.
std::vector<double> planck_field(std::span<const double> theta, double c_planck);

/// Numerical value of the spectrum integral int_0^inf nu^3/(e^(nu/theta)-1) dnu,
/// by adaptive Simpson quadrature; equals (pi^4/15) * theta^4. Used by the
/// validate-planck check, with the series value as an independent oracle.
double planck_spectrum_integral(double theta, double rel_tol = 1e-12);

}  // namespace raddiff
