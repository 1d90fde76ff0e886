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
#include "raddiff/planck.hpp"

#include <cmath>
#include <string>

namespace raddiff {

double planck(double theta, double c_planck) {
    if (theta <= 0.0)
        throw StateError("planck", "temperature must be positive, got " + std::to_string(theta));
    double t2 = theta * theta;
    return c_planck * t2 * t2;
}

std::vector<double> planck_field(std::span<const double> theta, double c_planck) {
    std::vector<double> b(theta.size());
    for (std::size_t c = 0; c < theta.size(); ++c) b[c] = planck(theta[c], c_planck);
    return b;
}

namespace {

double spectrum_integrand(double nu, double theta) {
    if (nu <= 0.0) return 0.0;
    double x = nu / theta;
    // nu^3/(e^x - 1); expm1 keeps the x->0 end accurate.
    return nu * nu * nu / std::expm1(x);
}

double adaptive_simpson(double a, double b, double fa, double fm, double fb, double whole,
                        double tol, double theta, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = spectrum_integrand(lm, theta), frm = spectrum_integrand(rm, theta);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson(a, m, fa, flm, fm, left, 0.5 * tol, theta, depth - 1) +
           adaptive_simpson(m, b, fm, frm, fb, right, 0.5 * tol, theta, depth - 1);
}

}  // namespace

double planck_spectrum_integral(double theta, double rel_tol) {
    if (theta <= 0.0)
        throw StateError("planck", "temperature must be positive, got " + std::to_string(theta));
    // The integrand decays like nu^3 e^(-nu/theta); beyond 60*theta the tail
    // is below 1e-20 of the total.
    double cut = 60.0 * theta;
    double scale = theta * theta * theta * theta;  // integral ~ 6.5 * theta^4
    double tol = rel_tol * 6.5 * scale;
    double fa = spectrum_integrand(0.0, theta);
    double fb = spectrum_integrand(cut, theta);
    double fm = spectrum_integrand(0.5 * cut, theta);
    double whole = cut / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(0.0, cut, fa, fm, fb, whole, tol, theta, 48);
}

}  // namespace raddiff
