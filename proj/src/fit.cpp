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
#include "raddiff/fit.hpp"

#include <cmath>

#include "raddiff/common.hpp"

namespace raddiff {

FitResult fit_order(const std::vector<std::pair<double, double>>& eps_error,
                    double rounding_floor) {
    if (eps_error.size() < 3)
        throw NumericError("fit", "order fit needs >= 3 (eps, error) pairs, got " +
                                      std::to_string(eps_error.size()));
    FitResult fit;
    for (const auto& [eps, err] : eps_error) {
        if (!(eps > 0.0)) throw NumericError("fit", "eps values must be positive");
        if (err < 0.0) throw NumericError("fit", "errors must be nonnegative");
        if (err < rounding_floor) fit.indeterminate = true;  // covers exact zeros
    }
    for (std::size_t i = 1; i < eps_error.size(); ++i) {
        // eps lists are descending; errors must shrink with eps for monotone.
        bool eps_down = eps_error[i].first < eps_error[i - 1].first;
        bool err_down = eps_error[i].second < eps_error[i - 1].second;
        if (eps_down != err_down) fit.monotone = false;
    }
    if (fit.indeterminate) return fit;

    double n = static_cast<double>(eps_error.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [eps, err] : eps_error) {
        double x = std::log(eps), y = std::log(err);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0.0;
    for (const auto& [eps, err] : eps_error) {
        double r = std::log(err) - (fit.slope * std::log(eps) + fit.intercept);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

}  // namespace raddiff
