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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "raddiff/angular.hpp"

using namespace raddiff;

namespace {

std::vector<double> sample_nodes(const AngularQuadrature& quad,
                                 const std::function<double(const Vec3&)>& f) {
    std::vector<double> v(quad.size());
    for (std::size_t q = 0; q < quad.size(); ++q) v[q] = f(quad.node(q));
    return v;
}

void check_identities(const AngularQuadrature& quad) {
    QuadratureIdentities id = quadrature_identities(quad);
    CHECK(id.node_norm_error <= 1e-14);
    CHECK(id.weight_sum_error <= 1e-14);
    CHECK(id.mean_direction <= 1e-13);
    CHECK(id.second_moment_dev <= 1e-13);
}

}  // namespace

TEST_CASE("structural identities hold for both families") {
    for (int order : {2, 3, 4, 5, 6, 7})
        check_identities(AngularQuadrature::build(QuadratureKind::OctahedralSymmetric, order));
    for (int order : {2, 4, 6, 8, 11})
        check_identities(AngularQuadrature::build(QuadratureKind::ProductGauss, order));
}

TEST_CASE("unsupported configurations raise configuration errors") {
    CHECK_THROWS_AS(AngularQuadrature::build(QuadratureKind::OctahedralSymmetric, 1), ConfigError);
    CHECK_THROWS_AS(AngularQuadrature::build(QuadratureKind::OctahedralSymmetric, 8), ConfigError);
    CHECK_THROWS_AS(AngularQuadrature::build(QuadratureKind::ProductGauss, 0), ConfigError);
    CHECK_THROWS_AS(quadrature_kind_from_name("lebedev"), ConfigError);
}

TEST_CASE("monomials up to the exactness degree match analytic sphere moments") {
    // Analytic even-moment formula, itself verified against Monte Carlo below.
    for (auto [kind, order] :
         {std::pair{QuadratureKind::OctahedralSymmetric, 7}, {QuadratureKind::ProductGauss, 8},
          {QuadratureKind::OctahedralSymmetric, 5}, {QuadratureKind::ProductGauss, 5}}) {
        AngularQuadrature quad = AngularQuadrature::build(kind, order);
        for (int a = 0; a <= order; ++a) {
            for (int b = 0; a + b <= order; ++b) {
                for (int c = 0; a + b + c <= order; ++c) {
                    auto vals = sample_nodes(quad, [&](const Vec3& w) {
                        return std::pow(w[0], a) * std::pow(w[1], b) * std::pow(w[2], c);
                    });
                    double expected = oracles::sphere_monomial_moment(a, b, c);
                    CHECK_NEAR(quad.moment0(vals), expected, 1e-13);
                }
            }
        }
    }
}

TEST_CASE("analytic moment formula agrees with Monte Carlo") {
    for (auto [a, b, c] : {std::array{2, 0, 0}, {0, 0, 2}, {2, 2, 0}, {4, 0, 0}, {2, 2, 2}}) {
        double mc = oracles::sphere_average_mc(
            [&](const std::array<double, 3>& w) {
                return std::pow(w[0], a) * std::pow(w[1], b) * std::pow(w[2], c);
            },
            400000, 77);
        CHECK_NEAR(mc, oracles::sphere_monomial_moment(a, b, c), 1e-3);
    }
}

TEST_CASE("moment0 examples") {
    AngularQuadrature quad = AngularQuadrature::build(QuadratureKind::OctahedralSymmetric, 6);
    auto constant = sample_nodes(quad, [](const Vec3&) { return 4.25; });
    CHECK(quad.moment0(constant) == doctest::Approx(4.25).epsilon(1e-15));

    auto wz = sample_nodes(quad, [](const Vec3& w) { return w[2]; });
    CHECK_NEAR(quad.moment0(wz), 0.0, 1e-15);

    auto wz2 = sample_nodes(quad, [](const Vec3& w) { return w[2] * w[2]; });
    CHECK(quad.moment0(wz2) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("moment1 examples") {
    AngularQuadrature quad = AngularQuadrature::build(QuadratureKind::OctahedralSymmetric, 6);
    auto constant = sample_nodes(quad, [](const Vec3&) { return 2.0; });
    Vec3 m = quad.moment1(constant);
    for (double v : m) CHECK_NEAR(v, 0.0, 1e-15);

    // f = a + b.w  ->  <w f> = b/3
    Vec3 b{0.7, -1.2, 0.4};
    auto affine = sample_nodes(
        quad, [&](const Vec3& w) { return 1.5 + b[0] * w[0] + b[1] * w[1] + b[2] * w[2]; });
    m = quad.moment1(affine);
    for (int i = 0; i < 3; ++i) CHECK_NEAR(m[i], b[i] / 3.0, 1e-14);

    auto wz = sample_nodes(quad, [](const Vec3& w) { return w[2]; });
    m = quad.moment1(wz);
    CHECK_NEAR(m[0], 0.0, 1e-15);
    CHECK_NEAR(m[1], 0.0, 1e-15);
    CHECK(m[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("moment2 examples") {
    AngularQuadrature quad = AngularQuadrature::build(QuadratureKind::OctahedralSymmetric, 6);
    auto one = sample_nodes(quad, [](const Vec3&) { return 1.0; });
    auto m = quad.moment2(one);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK_NEAR(m[3 * i + j], i == j ? 1.0 / 3.0 : 0.0, 1e-15);

    auto wz = sample_nodes(quad, [](const Vec3& w) { return w[2]; });
    m = quad.moment2(wz);
    for (double v : m) CHECK_NEAR(v, 0.0, 1e-15);

    // diag(1/15, 1/15, 1/5) for f = w_z^2, cross-checked against the
    // analytic moment oracle.
    auto wz2 = sample_nodes(quad, [](const Vec3& w) { return w[2] * w[2]; });
    m = quad.moment2(wz2);
    CHECK(m[0] == doctest::Approx(oracles::sphere_monomial_moment(2, 0, 2)).epsilon(1e-13));
    CHECK(m[4] == doctest::Approx(oracles::sphere_monomial_moment(0, 2, 2)).epsilon(1e-13));
    CHECK(m[8] == doctest::Approx(oracles::sphere_monomial_moment(0, 0, 4)).epsilon(1e-13));
    CHECK(m[0] == doctest::Approx(1.0 / 15.0).epsilon(1e-13));
    CHECK(m[8] == doctest::Approx(1.0 / 5.0).epsilon(1e-13));
}

TEST_CASE("moment input length mismatch is a contract violation") {
    AngularQuadrature quad = AngularQuadrature::build(QuadratureKind::OctahedralSymmetric, 4);
    std::vector<double> short_vals(quad.size() - 1, 1.0);
    CHECK_THROWS_AS(quad.moment0(short_vals), NumericError);
    CHECK_THROWS_AS(quad.moment1(short_vals), NumericError);
}

TEST_CASE("rotational robustness") {
    std::mt19937_64 rng(123);
    AngularQuadrature quad = AngularQuadrature::build(QuadratureKind::OctahedralSymmetric, 6);
    for (int trial = 0; trial < 20; ++trial) {
        auto rot = oracles::random_rotation(rng);
        AngularQuadrature rotated = quad.rotated(rot);

        // moment0 of any degree-2 polynomial is rotation invariant.
        auto quadratic = sample_nodes(rotated, [](const Vec3& w) {
            return 0.3 + 0.5 * w[0] - 0.2 * w[1] + w[0] * w[2] + 0.8 * w[1] * w[1];
        });
        double expected = 0.3 + 0.8 / 3.0;
        CHECK(rotated.moment0(quadratic) == doctest::Approx(expected).epsilon(1e-12));

        // moment1 of b.w stays b/3 for the rotated set (covariance).
        Vec3 b{1.0, -0.5, 0.25};
        auto affine = sample_nodes(
            rotated, [&](const Vec3& w) { return b[0] * w[0] + b[1] * w[1] + b[2] * w[2]; });
        Vec3 m = rotated.moment1(affine);
        for (int i = 0; i < 3; ++i) CHECK_NEAR(m[i], b[i] / 3.0, 1e-12);
    }
}
