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

#include <utility>
#include <vector>

namespace raddiff {

struct FitResult {
    double slope = 0.0;      // observed order: log err ~ slope * log eps + intercept
    double intercept = 0.0;
    double residual = 0.0;   // rms of the log-log fit residuals
    bool monotone = true;    // errors strictly decreasing with eps
    bool indeterminate = false;  // errors at rounding level, fit skipped
};

/// Least squares on (log eps, log err). Needs >= 3 pairs with positive
/// errors; flags non-monotone sequences instead of failing. Pairs whose
/// error sits at rounding level (< floor) mark the fit indeterminate.
FitResult fit_order(const std::vector<std::pair<double, double>>& eps_error,
                    double rounding_floor = 1e-13);

}  // namespace raddiff
