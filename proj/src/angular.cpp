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
#include "raddiff/angular.hpp"

#include <cmath>
#include <numbers>

namespace raddiff {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::fabs(dt) < 1e-15) break;
        }
        x[i] = -t;
        x[n - 1 - i] = t;
        double wi = 2.0 / ((1.0 - t * t) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
}

void push_sign_orbit(std::vector<Vec3>& nodes, std::vector<double>& weights, const Vec3& base,
                     double weight_each) {
    // All distinct sign flips of the nonzero components.
    std::vector<Vec3> orbit{base};
    for (int axis = 0; axis < 3; ++axis) {
        if (base[axis] == 0.0) continue;
        std::size_t count = orbit.size();
        for (std::size_t i = 0; i < count; ++i) {
            Vec3 flipped = orbit[i];
            flipped[axis] = -flipped[axis];
            orbit.push_back(flipped);
        }
    }
    for (const Vec3& v : orbit) {
        nodes.push_back(v);
        weights.push_back(weight_each);
    }
}

void push_axis_permutations(std::vector<Vec3>& nodes, std::vector<double>& weights, const Vec3& base,
                            double weight_each) {
    // Distinct cyclic placements for patterns (a,0,0) and (a,a,0).
    push_sign_orbit(nodes, weights, {base[0], base[1], base[2]}, weight_each);
    push_sign_orbit(nodes, weights, {base[2], base[0], base[1]}, weight_each);
    push_sign_orbit(nodes, weights, {base[1], base[2], base[0]}, weight_each);
}

}  // namespace

QuadratureKind quadrature_kind_from_name(const std::string& name) {
    if (name == "product-gauss") return QuadratureKind::ProductGauss;
    if (name == "octahedral-symmetric") return QuadratureKind::OctahedralSymmetric;
    throw ConfigError("unknown quadrature kind '" + name +
                      "' (expected product-gauss or octahedral-symmetric)");
}

std::string quadrature_kind_name(QuadratureKind kind) {
    return kind == QuadratureKind::ProductGauss ? "product-gauss" : "octahedral-symmetric";
}

AngularQuadrature AngularQuadrature::build(QuadratureKind kind, int order) {
    if (order < 2) throw ConfigError("quadrature order must be >= 2, got " + std::to_string(order));
    AngularQuadrature quad;
    quad.kind_ = kind;
    quad.order_ = order;

    if (kind == QuadratureKind::ProductGauss) {
        // n-point Gauss-Legendre in mu integrates polynomials of degree
        // 2n-1; m uniform azimuthal points integrate trigonometric degree
        // m-1. Total Cartesian degree <= order needs both.
        int n_polar = order / 2 + 1;
        int n_azim = order + 1;
        std::vector<double> mu, gw;
        gauss_legendre(n_polar, mu, gw);
        for (int i = 0; i < n_polar; ++i) {
            double sin_theta = std::sqrt(1.0 - mu[i] * mu[i]);
            for (int j = 0; j < n_azim; ++j) {
                double phi = 2.0 * std::numbers::pi * (j + 0.5) / n_azim;
                quad.nodes_.push_back({sin_theta * std::cos(phi), sin_theta * std::sin(phi), mu[i]});
                quad.weights_.push_back(0.5 * gw[i] / n_azim);
            }
        }
    } else {
        // Octahedral orbits: V = axis vectors, E = edge midpoints,
        // C = cube corners. Orbit weights solve the even-moment conditions.
        const double s2 = 1.0 / std::sqrt(2.0);
        const double s3 = 1.0 / std::sqrt(3.0);
        if (order <= 3) {
            push_axis_permutations(quad.nodes_, quad.weights_, {1.0, 0.0, 0.0}, 1.0 / 6.0);
        } else if (order <= 5) {
            push_axis_permutations(quad.nodes_, quad.weights_, {1.0, 0.0, 0.0}, 1.0 / 15.0);
            push_sign_orbit(quad.nodes_, quad.weights_, {s3, s3, s3}, 3.0 / 40.0);
        } else if (order <= 7) {
            push_axis_permutations(quad.nodes_, quad.weights_, {1.0, 0.0, 0.0}, 1.0 / 21.0);
            push_axis_permutations(quad.nodes_, quad.weights_, {s2, s2, 0.0}, 4.0 / 105.0);
            push_sign_orbit(quad.nodes_, quad.weights_, {s3, s3, s3}, 9.0 / 280.0);
        } else {
            throw ConfigError("octahedral-symmetric quadrature supports order 2..7, got " +
                              std::to_string(order));
        }
    }

    // Renormalize so the weights sum to 1 up to a final rounding.
    double total = 0.0;
    for (double w : quad.weights_) total += w;
    for (double& w : quad.weights_) w /= total;
    return quad;
}

void AngularQuadrature::check_sizes(std::span<const double> values) const {
    if (values.size() != nodes_.size()) {
        throw NumericError("angular", "moment input length " + std::to_string(values.size()) +
                                          " != node count " + std::to_string(nodes_.size()));
    }
}

double AngularQuadrature::moment0(std::span<const double> values) const {
    check_sizes(values);
    double s = 0.0;
    for (std::size_t q = 0; q < values.size(); ++q) s += weights_[q] * values[q];
    return s;
}

Vec3 AngularQuadrature::moment1(std::span<const double> values) const {
    check_sizes(values);
    Vec3 m{0.0, 0.0, 0.0};
    for (std::size_t q = 0; q < values.size(); ++q) {
        double wf = weights_[q] * values[q];
        m[0] += wf * nodes_[q][0];
        m[1] += wf * nodes_[q][1];
        m[2] += wf * nodes_[q][2];
    }
    return m;
}

std::array<double, 9> AngularQuadrature::moment2(std::span<const double> values) const {
    check_sizes(values);
    std::array<double, 9> m{};
    for (std::size_t q = 0; q < values.size(); ++q) {
        double wf = weights_[q] * values[q];
        const Vec3& n = nodes_[q];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m[3 * i + j] += wf * n[i] * n[j];
    }
    return m;
}

AngularQuadrature AngularQuadrature::rotated(const std::array<double, 9>& rot) const {
    AngularQuadrature out = *this;
    for (Vec3& n : out.nodes_) {
        Vec3 r;
        for (int i = 0; i < 3; ++i)
            r[i] = rot[3 * i] * n[0] + rot[3 * i + 1] * n[1] + rot[3 * i + 2] * n[2];
        n = r;
    }
    return out;
}

QuadratureIdentities quadrature_identities(const AngularQuadrature& quad) {
    QuadratureIdentities id{};
    double wsum = 0.0;
    Vec3 mean{0.0, 0.0, 0.0};
    std::array<double, 9> second{};
    for (std::size_t q = 0; q < quad.size(); ++q) {
        double w = quad.weight(q);
        const Vec3& n = quad.node(q);
        wsum += w;
        for (int i = 0; i < 3; ++i) mean[i] += w * n[i];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) second[3 * i + j] += w * n[i] * n[j];
        double norm = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
        id.node_norm_error = std::max(id.node_norm_error, std::fabs(norm - 1.0));
    }
    id.weight_sum_error = std::fabs(wsum - 1.0);
    for (int i = 0; i < 3; ++i) id.mean_direction = std::max(id.mean_direction, std::fabs(mean[i]));
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double target = (i == j) ? 1.0 / 3.0 : 0.0;
            id.second_moment_dev = std::max(id.second_moment_dev, std::fabs(second[3 * i + j] - target));
        }
    }
    return id;
}

}  // namespace raddiff
