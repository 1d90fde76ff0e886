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

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "raddiff/fluid.hpp"
#include "raddiff/planck.hpp"

using namespace raddiff;

namespace {

double total_mass(const ConservativeState& s) {
    double m = 0.0;
    for (double rho : s.rho) m += rho * s.grid.cell_volume();
    return m;
}

FluidState acoustic_state(const PeriodicGrid& grid, double amp) {
    FluidState f(grid);
    for (std::size_t c = 0; c < grid.cells(); ++c) {
        double x = grid.cell_center(c)[0];
        f.rho[c] = 1.0 + amp * std::sin(x);
        f.theta[c] = 1.0;
        f.u[0][c] = 0.0;
    }
    return f;
}

}  // namespace

TEST_CASE("primitive/conservative conversion examples") {
    PeriodicGrid grid(1, 4);
    FluidState prim(grid);

    // (rho, u, theta) = (1, 0, 1) -> (1, 0, 1)
    ConservativeState cons = primitive_to_conservative(prim);
    CHECK(cons.rho[0] == 1.0);
    CHECK(cons.m[0][0] == 0.0);
    CHECK(cons.energy[0] == 1.0);

    // (2, (1,0,0), 3) -> (2, (2,0,0), 2*0.5 + 6 = 7)
    for (std::size_t c = 0; c < grid.cells(); ++c) {
        prim.rho[c] = 2.0;
        prim.u[0][c] = 1.0;
        prim.theta[c] = 3.0;
    }
    cons = primitive_to_conservative(prim);
    CHECK(cons.rho[0] == 2.0);
    CHECK(cons.m[0][0] == 2.0);
    CHECK(cons.energy[0] == 7.0);
}

TEST_CASE("conversion round-trips are identity to 1e-14") {
    PeriodicGrid grid(1, 8);
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> rho_dist(0.2, 3.0);
    std::uniform_real_distribution<double> u_dist(-1.5, 1.5);
    std::uniform_real_distribution<double> theta_dist(0.1, 4.0);
    for (int trial = 0; trial < 100; ++trial) {
        FluidState prim(grid);
        for (std::size_t c = 0; c < grid.cells(); ++c) {
            prim.rho[c] = rho_dist(rng);
            prim.theta[c] = theta_dist(rng);
            for (int a = 0; a < 3; ++a) prim.u[a][c] = u_dist(rng);
        }
        FluidState back = conservative_to_primitive(primitive_to_conservative(prim));
        for (std::size_t c = 0; c < grid.cells(); ++c) {
            CHECK(back.rho[c] == doctest::Approx(prim.rho[c]).epsilon(1e-14));
            CHECK(back.theta[c] == doctest::Approx(prim.theta[c]).epsilon(1e-14));
            for (int a = 0; a < 3; ++a)
                CHECK_NEAR(back.u[a][c], prim.u[a][c], 1e-14 * (1.0 + std::fabs(prim.u[a][c])));
        }
    }
}

TEST_CASE("inversion rejects nonpositive density and internal energy") {
    PeriodicGrid grid(1, 4);
    ConservativeState cons(grid);
    cons.rho[2] = -0.5;
    CHECK_THROWS_AS(conservative_to_primitive(cons), StateError);
    cons.rho[2] = 1.0;
    cons.m[0][1] = 10.0;  // kinetic energy exceeds total
    bool caught = false;
    try {
        conservative_to_primitive(cons);
    } catch (const StateError& err) {
        caught = true;
        CHECK(std::string(err.what()).find("cell 1") != std::string::npos);
    }
    CHECK(caught);
}

TEST_CASE("rusanov: uniform state is unchanged exactly") {
    PeriodicGrid grid(2, 8);
    FluidState prim(grid);
    for (std::size_t c = 0; c < grid.cells(); ++c) {
        prim.rho[c] = 1.4;
        prim.theta[c] = 0.9;
        prim.u[0][c] = 0.3;
        prim.u[1][c] = -0.2;
    }
    ConservativeState cons = primitive_to_conservative(prim);
    ConservativeState next = rusanov_flux_step(cons, 0.5 * fluid_max_dt(cons));
    for (std::size_t c = 0; c < grid.cells(); ++c) {
        CHECK(next.rho[c] == cons.rho[c]);
        CHECK(next.energy[c] == cons.energy[c]);
        for (int a = 0; a < 3; ++a) CHECK(next.m[a][c] == cons.m[a][c]);
    }
}

TEST_CASE("rusanov: mass telescopes exactly, with and without MUSCL") {
    PeriodicGrid grid(1, 64);
    ConservativeState cons = primitive_to_conservative(acoustic_state(grid, 0.3));
    double mass0 = total_mass(cons);
    for (FluxOptions opts : {FluxOptions{false}, FluxOptions{true}}) {
        ConservativeState s = cons;
        for (int step = 0; step < 50; ++step) s = rusanov_flux_step(s, 0.4 * fluid_max_dt(s), opts);
        CHECK_NEAR(total_mass(s), mass0, 1e-13 * mass0);
    }
}

TEST_CASE("rusanov: CFL violation is rejected with a suggestion") {
    PeriodicGrid grid(1, 32);
    ConservativeState cons = primitive_to_conservative(acoustic_state(grid, 0.2));
    double dt_max = fluid_max_dt(cons);
    bool caught = false;
    try {
        rusanov_flux_step(cons, 3.0 * dt_max);
    } catch (const CflError& err) {
        caught = true;
        CHECK(err.suggested_dt <= dt_max);
        CHECK(err.suggested_dt > 0.0);
    }
    CHECK(caught);
}

TEST_CASE("rusanov: acoustic pulse self-converges at first order") {
    // Richardson self-convergence: ||u_n - u_2n|| against ||u_2n - u_4n||.
    const double t_end = 0.1;
    std::vector<std::vector<double>> solutions;
    std::vector<int> sizes{32, 64, 128};
    for (int n : sizes) {
        PeriodicGrid grid(1, n);
        ConservativeState s = primitive_to_conservative(acoustic_state(grid, 0.2));
        double t = 0.0;
        while (t < t_end) {
            double dt = std::min(0.4 * fluid_max_dt(s), t_end - t);
            s = rusanov_flux_step(s, dt);
            t += dt;
        }
        solutions.push_back(s.rho);
    }
    auto coarse_error = [&](const std::vector<double>& coarse, const std::vector<double>& fine) {
        double err = 0.0;
        std::size_t ratio = fine.size() / coarse.size();
        for (std::size_t c = 0; c < coarse.size(); ++c) {
            double avg = 0.0;
            for (std::size_t j = 0; j < ratio; ++j) avg += fine[c * ratio + j];
            avg /= static_cast<double>(ratio);
            err = std::max(err, std::fabs(coarse[c] - avg));
        }
        return err;
    };
    double e01 = coarse_error(solutions[0], solutions[1]);
    double e12 = coarse_error(solutions[1], solutions[2]);
    CHECK(std::log2(e01 / e12) >= 0.8);
}

TEST_CASE("smooth well-resolved runs stay positive at CFL <= 0.5") {
    PeriodicGrid grid(1, 64);
    ConservativeState s = primitive_to_conservative(acoustic_state(grid, 0.4));
    for (int step = 0; step < 400; ++step) {
        s = rusanov_flux_step(s, 0.5 * fluid_max_dt(s));
        // conversion throws on any nonpositive density or internal energy
        CHECK_NOTHROW(conservative_to_primitive(s));
    }
}

TEST_CASE("apply_sources examples") {
    PeriodicGrid grid(1, 8);
    FluidState prim(grid);  // at rest, rho = theta = 1
    ConservativeState cons = primitive_to_conservative(prim);

    SUBCASE("zero sources are the identity, bit for bit") {
        ConservativeState copy = cons;
        RadiativeSources zero(grid);
        apply_sources(copy, zero, 0.125);
        for (std::size_t c = 0; c < grid.cells(); ++c) {
            CHECK(copy.rho[c] == cons.rho[c]);
            CHECK(copy.m[0][c] == cons.m[0][c]);
            CHECK(copy.energy[c] == cons.energy[c]);
        }
    }
    SUBCASE("uniform momentum source accelerates from rest: u1 = dt s / rho") {
        RadiativeSources src(grid);
        const double s = 0.75, dt = 0.01;
        for (double& v : src.s_f[0]) v = s;
        apply_sources(cons, src, dt);
        FluidState prim1 = conservative_to_primitive(cons);
        for (std::size_t c = 0; c < grid.cells(); ++c)
            CHECK(prim1.u[0][c] == doctest::Approx(dt * s / prim1.rho[c]).epsilon(1e-14));
    }
    SUBCASE("fbar = B(theta) leaves the energy unchanged") {
        RadiativeSources src(grid);  // s_e already zero
        apply_sources(cons, src, 0.5);
        for (std::size_t c = 0; c < grid.cells(); ++c) CHECK(cons.energy[c] == 1.0);
    }
}

TEST_CASE("radiative sources match the moment formula") {
    PeriodicGrid grid(1, 8);
    auto quad = std::make_shared<AngularQuadrature>(
        AngularQuadrature::build(QuadratureKind::OctahedralSymmetric, 6));
    KineticField f(grid, quad);
    f.sample([](const Vec3& x, const Vec3& w) { return 1.0 + 0.5 * w[0] + 0.1 * std::sin(x[0]); });
    ScalarField fbar = moment0_field(f);
    std::vector<double> b(grid.cells(), 0.7);
    double eps = 0.25;
    RadiativeSources src = radiative_sources(f, fbar, b, eps);
    // <w_x (f - fbar)> = 0.5/3
    double expected = (1.0 / eps + eps) * 0.5 / 3.0;
    for (std::size_t c = 0; c < grid.cells(); ++c) {
        CHECK(src.s_f[0][c] == doctest::Approx(expected).epsilon(1e-12));
        CHECK(src.s_e[c] == doctest::Approx(fbar.data[c] - 0.7).epsilon(1e-12));
    }
}

TEST_CASE("planck function examples and domain errors") {
    CHECK(planck(1.0) == 1.0);
    CHECK(planck(2.0) == 16.0);
    CHECK(planck(2.0, 0.5) == 8.0);
    CHECK_THROWS_AS(planck(0.0), StateError);
    CHECK_THROWS_AS(planck(-1.0), StateError);
}

TEST_CASE("planck spectrum integral matches the zeta-series oracle") {
    // integral = Gamma(4) zeta(4) theta^4 = 6 zeta(4) theta^4 = (pi^4/15) theta^4
    const double six_zeta4 = 6.0 * oracles::zeta4_series();
    for (double theta : {0.5, 1.0, 2.0}) {
        double ratio = planck_spectrum_integral(theta) / planck(theta);
        CHECK_NEAR(ratio, six_zeta4, 1e-8);
    }
    CHECK(six_zeta4 == doctest::Approx(6.49393940226683).epsilon(1e-10));
}
