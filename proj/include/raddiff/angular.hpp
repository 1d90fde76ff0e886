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
#include <string>
#include <vector>

#include "raddiff/common.hpp"

namespace raddiff {

enum class QuadratureKind { ProductGauss, OctahedralSymmetric };

QuadratureKind quadrature_kind_from_name(const std::string& name);
std::string quadrature_kind_name(QuadratureKind kind);

/// Discrete ordinates on the unit sphere realizing the normalized angular
/// average <.> = (1/4pi) * integral over S^2. Weights sum to one, so code
/// level averages carry no stray 4pi factors. Immutable after construction;
/// safe to share across threads.
class AngularQuadrature {
public:
    /// Builds a quadrature of the requested exactness degree.
    ///
    /// ProductGauss: Gauss-Legendre in the polar cosine times a uniform
    /// azimuthal grid; supports any order >= 2. OctahedralSymmetric: point
    /// sets closed under the octahedral group (6, 14 or 26 nodes for degrees
    /// 3, 5, 7), so odd moments and <w (x) w> = I/3 hold by symmetry rather
    /// than by approximation; supports order 2..7.
    static AngularQuadrature build(QuadratureKind kind, int order);

    std::size_t size() const { return nodes_.size(); }
    const std::vector<Vec3>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    const Vec3& node(std::size_t q) const { return nodes_[q]; }
    double weight(std::size_t q) const { return weights_[q]; }
    int order() const { return order_; }
    QuadratureKind kind() const { return kind_; }

    /// Zeroth angular moment: sum_q w_q f_q (the discrete average f-bar).
    double moment0(std::span<const double> values) const;
    /// First moment <w f>.
    Vec3 moment1(std::span<const double> values) const;
    /// Second moment <w (x) w f>, row-major 3x3.
    std::array<double, 9> moment2(std::span<const double> values) const;

    /// Nodes rotated by a common rotation matrix (row-major), same weights.
    AngularQuadrature rotated(const std::array<double, 9>& rot) const;

private:
    AngularQuadrature() = default;
    void check_sizes(std::span<const double> values) const;

    QuadratureKind kind_ = QuadratureKind::OctahedralSymmetric;
    int order_ = 0;
    std::vector<Vec3> nodes_;
    std::vector<double> weights_;
};

/// Deviations of the structural identities <1>=1, <w>=0, <w(x)w>=I/3.
struct QuadratureIdentities {
    double weight_sum_error;   // |sum w - 1|
    double mean_direction;     // max component of |<w>|
    double second_moment_dev;  // max entry of |<w(x)w> - I/3|
    double node_norm_error;    // max | |w_q| - 1 |
};
QuadratureIdentities quadrature_identities(const AngularQuadrature& quad);

}  // namespace raddiff
