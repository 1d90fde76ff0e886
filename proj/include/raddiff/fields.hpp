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

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "raddiff/angular.hpp"
#include "raddiff/grid.hpp"

namespace raddiff {

struct Norms {
    double l2 = 0.0;
    double linf = 0.0;
};

/// Cell-centered scalar field.
struct ScalarField {
    ScalarField() : grid(1, 4) {}
    explicit ScalarField(const PeriodicGrid& g, double fill = 0.0) : grid(g), data(g.cells(), fill) {}

    PeriodicGrid grid;
    std::vector<double> data;

    double& operator[](std::size_t c) { return data[c]; }
    double operator[](std::size_t c) const { return data[c]; }
};

/// Cell-centered 3-vector field, stored component-wise.
struct VectorField {
    VectorField() : grid(1, 4) {}
    explicit VectorField(const PeriodicGrid& g) : grid(g) {
        for (auto& c : comp) c.assign(g.cells(), 0.0);
    }

    PeriodicGrid grid;
    std::array<std::vector<double>, 3> comp;
};

/// Radiative intensity f(x, w) sampled on grid cells x quadrature nodes.
/// Storage is angle-major: node q occupies the contiguous row
/// values[q*cells .. (q+1)*cells), which keeps the per-cell angular
/// reductions and the relaxation update vectorizable over cells.
class KineticField {
public:
    KineticField() : grid_(1, 4) {}
    KineticField(const PeriodicGrid& grid, std::shared_ptr<const AngularQuadrature> quad,
                 double fill = 0.0)
        : grid_(grid), quad_(std::move(quad)), values_(grid_.cells() * quad_->size(), fill) {}

    const PeriodicGrid& grid() const { return grid_; }
    const AngularQuadrature& quad() const { return *quad_; }
    std::shared_ptr<const AngularQuadrature> quad_ptr() const { return quad_; }
    std::size_t num_nodes() const { return quad_->size(); }
    std::size_t cells() const { return grid_.cells(); }

    std::span<double> row(std::size_t q) { return {values_.data() + q * cells(), cells()}; }
    std::span<const double> row(std::size_t q) const { return {values_.data() + q * cells(), cells()}; }
    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }
    double& at(std::size_t c, std::size_t q) { return values_[q * cells() + c]; }
    double at(std::size_t c, std::size_t q) const { return values_[q * cells() + c]; }

    /// Fill from a callable f(x, w).
    void sample(const std::function<double(const Vec3&, const Vec3&)>& f);

private:
    PeriodicGrid grid_;
    std::shared_ptr<const AngularQuadrature> quad_;
    std::vector<double> values_;
};

/// Fluid unknowns (rho, u, theta) per cell; rho > 0 and theta > 0 are
/// invariants of every admissible state.
struct FluidState {
    FluidState() : grid(1, 4) {}
    explicit FluidState(const PeriodicGrid& g)
        : grid(g), rho(g.cells(), 1.0), u(), theta(g.cells(), 1.0) {
        for (auto& c : u) c.assign(g.cells(), 0.0);
    }

    PeriodicGrid grid;
    std::vector<double> rho;
    std::array<std::vector<double>, 3> u;
    std::vector<double> theta;
};

// Angular moments over the whole field (per-cell reductions over nodes).
ScalarField moment0_field(const KineticField& f);
VectorField moment1_field(const KineticField& f);
/// <w f> of the fluctuation f - fbar; equals moment1_field(f) up to the
/// quadrature's <w> rounding but matches the source-term formula verbatim.
VectorField moment1_fluctuation_field(const KineticField& f, const ScalarField& fbar);

// Discrete norms: cell-volume weighting h^dim in space, quadrature weights
// in angle, matching the continuum L2/Linf scales.
Norms norms(const ScalarField& f);
Norms norms(std::span<const double> values, const PeriodicGrid& grid);
Norms kinetic_norms(const KineticField& f);

/// First-difference seminorm sqrt(sum_a sum_c |D_a^+ f|^2 h^dim); the
/// discrete stand-in for the first Sobolev scale.
double h1_seminorm(const ScalarField& f);

double min_value(const KineticField& f);

/// Multilinear periodic interpolation of a single node row at point x.
double interpolate_row(const PeriodicGrid& grid, std::span<const double> row, const Vec3& x);

}  // namespace raddiff
