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
#include "raddiff/fields.hpp"

#include <cmath>

#include "raddiff/kernels.hpp"

namespace raddiff {

void KineticField::sample(const std::function<double(const Vec3&, const Vec3&)>& f) {
    for (std::size_t q = 0; q < num_nodes(); ++q) {
        auto r = row(q);
        const Vec3& w = quad_->node(q);
        for (std::size_t c = 0; c < cells(); ++c) r[c] = f(grid_.cell_center(c), w);
    }
}

ScalarField moment0_field(const KineticField& f) {
    ScalarField out(f.grid(), 0.0);
    for (std::size_t q = 0; q < f.num_nodes(); ++q)
        kernels::axpy(f.cells(), f.quad().weight(q), f.row(q).data(), out.data.data());
    return out;
}

VectorField moment1_field(const KineticField& f) {
    VectorField out(f.grid());
    for (std::size_t q = 0; q < f.num_nodes(); ++q) {
        double w = f.quad().weight(q);
        const Vec3& n = f.quad().node(q);
        for (int a = 0; a < 3; ++a) {
            if (n[a] == 0.0) continue;
            kernels::axpy(f.cells(), w * n[a], f.row(q).data(), out.comp[a].data());
        }
    }
    return out;
}

VectorField moment1_fluctuation_field(const KineticField& f, const ScalarField& fbar) {
    VectorField out(f.grid());
    std::vector<double> fluct(f.cells());
    for (std::size_t q = 0; q < f.num_nodes(); ++q) {
        kernels::axpby(f.cells(), 1.0, f.row(q).data(), -1.0, fbar.data.data(), fluct.data());
        double w = f.quad().weight(q);
        const Vec3& n = f.quad().node(q);
        for (int a = 0; a < 3; ++a) {
            if (n[a] == 0.0) continue;
            kernels::axpy(f.cells(), w * n[a], fluct.data(), out.comp[a].data());
        }
    }
    return out;
}

Norms norms(std::span<const double> values, const PeriodicGrid& grid) {
    Norms n;
    n.linf = kernels::absmax(values.size(), values.data());
    n.l2 = std::sqrt(grid.cell_volume() * kernels::dot(values.size(), values.data(), values.data()));
    return n;
}

Norms norms(const ScalarField& f) { return norms(f.data, f.grid); }

Norms kinetic_norms(const KineticField& f) {
    Norms n;
    double sumsq = 0.0;
    for (std::size_t q = 0; q < f.num_nodes(); ++q) {
        auto r = f.row(q);
        sumsq += f.quad().weight(q) * kernels::dot(r.size(), r.data(), r.data());
        n.linf = std::max(n.linf, kernels::absmax(r.size(), r.data()));
    }
    n.l2 = std::sqrt(f.grid().cell_volume() * sumsq);
    return n;
}

double h1_seminorm(const ScalarField& f) {
    const PeriodicGrid& grid = f.grid;
    double sumsq = 0.0;
    for (int a = 0; a < grid.dim(); ++a) {
        for (std::size_t c = 0; c < grid.cells(); ++c) {
            double d = (f.data[grid.neighbor(c, a, +1)] - f.data[c]) / grid.h();
            sumsq += d * d;
        }
    }
    return std::sqrt(grid.cell_volume() * sumsq);
}

double min_value(const KineticField& f) {
    double m = f.values().empty() ? 0.0 : f.values()[0];
    for (double v : f.values()) m = std::min(m, v);
    return m;
}

double interpolate_row(const PeriodicGrid& grid, std::span<const double> row, const Vec3& x) {
    const int n = grid.n();
    const double inv_h = 1.0 / grid.h();
    int base[3] = {0, 0, 0};
    double frac[3] = {0.0, 0.0, 0.0};
    for (int a = 0; a < grid.dim(); ++a) {
        double s = x[a] * inv_h - 0.5;  // cell-center coordinates
        double fl = std::floor(s);
        frac[a] = s - fl;
        long i = static_cast<long>(fl) % n;
        if (i < 0) i += n;
        base[a] = static_cast<int>(i);
    }
    double value = 0.0;
    int corners = 1 << grid.dim();
    for (int corner = 0; corner < corners; ++corner) {
        double weight = 1.0;
        std::size_t idx = 0;
        for (int a = grid.dim() - 1; a >= 0; --a) {
            int off = (corner >> a) & 1;
            weight *= off ? frac[a] : 1.0 - frac[a];
            int i = base[a] + off;
            if (i == n) i = 0;
            idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(i);
        }
        value += weight * row[idx];
    }
    return value;
}

}  // namespace raddiff
