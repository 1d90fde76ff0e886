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
#include "raddiff/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace raddiff {

PeriodicGrid::PeriodicGrid(int dim, int cells_per_axis) : dim_(dim), n_(cells_per_axis) {
    if (dim < 1 || dim > 3) throw ConfigError("grid dim must be 1, 2 or 3, got " + std::to_string(dim));
    if (n_ < 4) throw ConfigError("grid needs >= 4 cells per axis, got " + std::to_string(n_));
    h_ = 2.0 * std::numbers::pi / n_;
    cells_ = 1;
    volume_ = 1.0;
    for (int a = 0; a < dim_; ++a) {
        cells_ *= static_cast<std::size_t>(n_);
        volume_ *= h_;
    }
}

double PeriodicGrid::length() const { return 2.0 * std::numbers::pi; }

std::size_t PeriodicGrid::stride(int axis) const {
    std::size_t s = 1;
    for (int a = 0; a < axis; ++a) s *= static_cast<std::size_t>(n_);
    return s;
}

std::size_t PeriodicGrid::neighbor(std::size_t c, int axis, int dir) const {
    std::size_t s = stride(axis);
    std::size_t i = (c / s) % static_cast<std::size_t>(n_);
    if (dir > 0) return (i + 1 < static_cast<std::size_t>(n_)) ? c + s : c - s * (n_ - 1);
    return (i > 0) ? c - s : c + s * (n_ - 1);
}

Vec3 PeriodicGrid::cell_center(std::size_t c) const {
    Vec3 x{0.0, 0.0, 0.0};
    std::size_t rest = c;
    for (int a = 0; a < dim_; ++a) {
        x[a] = center(static_cast<int>(rest % n_));
        rest /= n_;
    }
    return x;
}

}  // namespace raddiff
