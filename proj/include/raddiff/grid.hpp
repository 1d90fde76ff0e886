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

#include <cstddef>

#include "raddiff/common.hpp"

namespace raddiff {

/// Uniform cell-centered grid on the torus (R/2piZ)^dim. Cells are indexed
/// x-fastest; centers sit at (i + 1/2) h. In the 1D "slab" mode (dim = 1)
/// directions remain full S^2 nodes while spatial variation is confined to
/// the x axis.
class PeriodicGrid {
public:
    PeriodicGrid(int dim, int cells_per_axis);

    int dim() const { return dim_; }
    int n() const { return n_; }
    double h() const { return h_; }
    std::size_t cells() const { return cells_; }
    /// Cell volume h^dim.
    double cell_volume() const { return volume_; }
    double length() const;  // 2*pi

    std::size_t stride(int axis) const;
    /// Index of the periodic neighbor of cell c along axis (dir = +1/-1).
    std::size_t neighbor(std::size_t c, int axis, int dir) const;
    /// Coordinate of the cell center along one axis.
    double center(int i) const { return (i + 0.5) * h_; }
    Vec3 cell_center(std::size_t c) const;

    bool operator==(const PeriodicGrid&) const = default;

private:
    int dim_;
    int n_;
    double h_;
    std::size_t cells_;
    double volume_;
};

}  // namespace raddiff
