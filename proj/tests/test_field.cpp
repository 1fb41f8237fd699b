// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>

#include "sesolv/errors.hpp"
#include "sesolv/field.hpp"
#include "support.hpp"

using namespace sesolv;
using sesolv::testing::random_field;
using std::numbers::pi;

TEST_SUITE("field")
{
    TEST_CASE("construction validates shape and finiteness")
    {
        auto grid = sesolv::testing::unit_interval(5);
        CHECK_THROWS_AS(ScalarField(grid, std::vector<double>(4, 0.0)), ShapeError);
        std::vector<double> bad(5, 0.0);
        bad[2] = std::nan("");
        CHECK_THROWS_AS(ScalarField(grid, std::move(bad)), DataError);
    }

    TEST_CASE("sample sin(pi x) on m=5")
    {
        auto grid = sesolv::testing::unit_interval(5);
        const ScalarField f = sample(grid, [](const Point& p) { return std::sin(pi * p.x); });
        const double s2 = std::sqrt(2.0) / 2.0;
        CHECK(f[0] == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(f[1] == doctest::Approx(s2).epsilon(1e-15));
        CHECK(f[2] == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(f[3] == doctest::Approx(s2).epsilon(1e-15));
        CHECK(std::abs(f[4]) <= 1e-15);
    }

    TEST_CASE("sample_source rejects negative data and clamps round-off")
    {
        auto grid = sesolv::testing::unit_interval(5);
        CHECK_THROWS_AS(sample_source(grid, [](const Point&) { return -1.0; }), DataError);
        const ScalarField f = sample_source(grid, [](const Point&) { return -1e-15; });
        for (int i = 0; i < f.size(); ++i) CHECK(f[i] == 0.0);
    }

    TEST_CASE("sample rejects non-finite evaluations")
    {
        auto grid = sesolv::testing::unit_interval(5);
        CHECK_THROWS_AS(sample(grid, [](const Point& p) { return 1.0 / p.x; }), DataError);
    }

    TEST_CASE("power_field")
    {
        auto grid = sesolv::testing::unit_interval(3);
        ScalarField f(grid, std::vector<double>{0.0, 0.25, 1.0});
        SUBCASE("q = 1 is the identity")
        {
            const ScalarField g = power_field(f, 1.0);
            for (int i = 0; i < 3; ++i) CHECK(g[i] == doctest::Approx(f[i]).epsilon(1e-15));
        }
        SUBCASE("pointwise square")
        {
            const ScalarField g = power_field(f, 2.0);
            CHECK(g[0] == 0.0);
            CHECK(g[1] == doctest::Approx(0.0625).epsilon(1e-15));
            CHECK(g[2] == doctest::Approx(1.0).epsilon(1e-15));
        }
        SUBCASE("all zeros stay zero for any exponent")
        {
            const ScalarField z = power_field(ScalarField(grid, 0.0), 3.7);
            for (int i = 0; i < 3; ++i) CHECK(z[i] == 0.0);
        }
        SUBCASE("negative entries are rejected")
        {
            ScalarField neg(grid, std::vector<double>{0.0, -0.1, 1.0});
            CHECK_THROWS_AS(power_field(neg, 2.0), DataError);
        }
        SUBCASE("exponent must be positive")
        {
            CHECK_THROWS_AS(power_field(f, 0.0), InvalidArgumentError);
        }
    }

    TEST_CASE("reflect")
    {
        auto grid = sesolv::testing::unit_interval(9);
        SUBCASE("x maps to 1 - x")
        {
            const ScalarField f = sample(grid, [](const Point& p) { return p.x; });
            const ScalarField r = reflect(f, Axis::X);
            for (int i = 0; i < r.size(); ++i)
                CHECK(r[i] == doctest::Approx(1.0 - grid->node(i).x).epsilon(1e-15));
        }
        SUBCASE("symmetric fields are fixed points")
        {
            const ScalarField f = sample(grid, [](const Point& p) { return std::sin(pi * p.x); });
            CHECK(sup_diff(f, reflect(f, Axis::X)) <= 1e-15);
        }
        SUBCASE("involution, bitwise")
        {
            const ScalarField f = random_field(grid, 5);
            const ScalarField rr = reflect(reflect(f, Axis::X), Axis::X);
            CHECK(std::memcmp(rr.values().data(), f.values().data(),
                              sizeof(double) * f.size()) == 0);
        }
        SUBCASE("preserves the Dirichlet energy")
        {
            const ScalarField f = random_field(grid, 17);
            const double e = h1_seminorm_sq(f);
            CHECK(std::abs(h1_seminorm_sq(reflect(f, Axis::X)) - e) <= 1e-14 * (1.0 + e));
        }
        SUBCASE("2D reflections about both axes")
        {
            auto rect = build_grid(Rectangle{0, 1, 0, 1}, 7);
            const ScalarField f = random_field(rect, 23);
            for (Axis axis : {Axis::X, Axis::Y}) {
                const ScalarField rr = reflect(reflect(f, axis), axis);
                CHECK(sup_diff(rr, f) == 0.0);
            }
        }
        SUBCASE("radial grids and missing axes are rejected")
        {
            auto ball = build_grid(RadialBall{2, 1.0}, 5);
            CHECK_THROWS_AS(reflect(ScalarField(ball, 1.0), Axis::X), ShapeError);
            CHECK_THROWS_AS(reflect(ScalarField(grid, 1.0), Axis::Y), ShapeError);
        }
    }

    TEST_CASE("h1 seminorm basics")
    {
        auto grid = sesolv::testing::unit_interval(33);
        SUBCASE("linear field has unit energy")
        {
            const ScalarField f = sample(grid, [](const Point& p) { return p.x; });
            CHECK(h1_seminorm_sq(f) == doctest::Approx(1.0).epsilon(1e-13));
        }
        SUBCASE("constants have zero energy")
        {
            CHECK(h1_seminorm_sq(ScalarField(grid, 4.2)) == 0.0);
        }
        SUBCASE("margin restricts to an interior subdomain")
        {
            auto coarse = sesolv::testing::unit_interval(5);
            const ScalarField f = sample(coarse, [](const Point& p) { return p.x; });
            // Cells fully at distance >= 0.25: [.25,.5] and [.5,.75].
            CHECK(h1_seminorm_sq(f, 0.25) == doctest::Approx(0.5).epsilon(1e-13));
        }
        SUBCASE("margin must stay below half the width")
        {
            CHECK_THROWS_AS(h1_seminorm_sq(ScalarField(grid, 0.0), 0.5), InvalidArgumentError);
        }
    }

    TEST_CASE("h1 seminorm of sin converges to pi^2/2 at second order")
    {
        const double target = 0.5 * pi * pi;
        double prev_err = 0.0;
        std::vector<double> errs;
        for (int m : {17, 33, 65, 129}) {
            auto grid = sesolv::testing::unit_interval(m);
            const ScalarField f = sample(grid, [](const Point& p) { return std::sin(pi * p.x); });
            errs.push_back(std::abs(h1_seminorm_sq(f) - target));
        }
        CHECK(errs.back() <= 1e-3);
        for (std::size_t i = 1; i < errs.size(); ++i) {
            const double order = std::log2(errs[i - 1] / errs[i]);
            CHECK(order >= 1.8);
        }
    }

    TEST_CASE("integrate uses the quadrature weights")
    {
        for (const Domain& d :
             {Domain(Interval{0, 2}), Domain(Rectangle{0, 1, 0, 3}), Domain(RadialBall{2, 1.0})}) {
            auto grid = build_grid(d, 9);
            CHECK(integrate(ScalarField(grid, 1.0)) == doctest::Approx(measure(d)).epsilon(1e-12));
        }
    }

    TEST_CASE("shifted positive part")
    {
        auto grid = sesolv::testing::unit_interval(5);
        const ScalarField f = sample(grid, [](const Point& p) { return p.x; });
        const ScalarField g = shifted_positive_part(f, 0.5);
        CHECK(g[1] == 0.0);
        CHECK(g[3] == doctest::Approx(0.25).epsilon(1e-15));
    }
}
