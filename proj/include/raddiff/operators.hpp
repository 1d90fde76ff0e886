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

#include "raddiff/fields.hpp"

namespace raddiff {

// Periodic finite-difference stencils on cell-centered data. Upwind
// derivatives are first order, central ones second order; all are
// translation equivariant and telescope to zero when summed over the torus.

/// out += coef * (w . grad f), upwinded by the sign of each active component.
void add_directional_upwind(const PeriodicGrid& grid, std::span<const double> f, const Vec3& w,
                            double coef, std::span<double> out);

/// out += coef * (w . grad f) with central differences.
void add_directional_central(const PeriodicGrid& grid, std::span<const double> f, const Vec3& w,
                             double coef, std::span<double> out);

/// w_q . grad f for one quadrature node of a kinetic field (upwind form).
std::vector<double> upwind_directional_derivative(const KineticField& f, std::size_t node_index);

/// Central derivative along one axis: out = d f / d x_axis.
void central_derivative(const PeriodicGrid& grid, std::span<const double> f, int axis,
                        std::span<double> out);

VectorField gradient_central(const ScalarField& f);
ScalarField divergence_central(const VectorField& v);
/// Composed central Laplacian: laplacian(f) == divergence_central(gradient_central(f)).
ScalarField laplacian(const ScalarField& f);
void laplacian_into(const PeriodicGrid& grid, std::span<const double> f, std::span<double> out);

}  // namespace raddiff
