// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>

#include "sesolv/errors.hpp"
#include "sesolv/solver.hpp"
#include "support.hpp"

using namespace sesolv;
using sesolv::testing::ones;
using sesolv::testing::unit_interval;
using std::numbers::pi;

namespace {

Problem unit_problem(int m, double beta, const SourceFn& f)
{
    auto grid = unit_interval(m);
    return Problem(grid, beta, sample_source(grid, f));
}

Problem constant_problem(int m, double beta, double value = 1.0)
{
    return unit_problem(m, beta, [value](const Point&) { return value; });
}

// Damped fixed-point iteration u <- (1-w) u + w A^{-1}(f_n / (u + 1/n)^beta),
// the independent oracle for the regularized Newton solve.
ScalarField picard_oracle(const Problem& problem, double n, double tol = 1e-12,
                          double damping = 0.5)
{
    const DiscreteOperator opr = assemble_neg_laplacian(problem.grid);
    const ScalarField fn = truncate_source(problem.f, n);
    ScalarField u(problem.grid, 0.0);
    for (int iter = 0; iter < 100000; ++iter) {
        ScalarField rhs(problem.grid, 0.0);
        for (int i = 0; i < rhs.size(); ++i)
            rhs[i] = fn[i] * std::pow(u[i] + 1.0 / n, -problem.beta);
        const ScalarField next = solve_linear(opr, rhs);
        double change = 0.0;
        for (int i = 0; i < u.size(); ++i) {
            const double blended = (1.0 - damping) * u[i] + damping * next[i];
            change = std::max(change, std::abs(blended - u[i]));
            u[i] = blended;
        }
        if (change <= tol) return u;
    }
    throw SolveError("picard oracle did not converge");
}

} // namespace

TEST_SUITE("solver")
{
    TEST_CASE("problem validation")
    {
        auto grid = unit_interval(5);
        CHECK_THROWS_AS(Problem(grid, 0.0, ScalarField(grid, 1.0)), InvalidArgumentError);
        CHECK_THROWS_AS(Problem(grid, -1.0, ScalarField(grid, 1.0)), InvalidArgumentError);
        CHECK_THROWS_AS(Problem(grid, 2.0, ScalarField(grid, -1.0)), DataError);
        auto other = unit_interval(5);
        CHECK_THROWS_AS(Problem(grid, 2.0, ScalarField(other, 1.0)), ShapeError);
    }

    TEST_CASE("truncate_source")
    {
        auto grid = unit_interval(9);
        SUBCASE("no-op when f is below the level")
        {
            const ScalarField f = sample(grid, [](const Point& p) { return 2.0 + p.x; });
            const ScalarField t = truncate_source(f, 10.0);
            CHECK(sup_diff(f, t) == 0.0);
        }
        SUBCASE("constant above the level clips")
        {
            const ScalarField t = truncate_source(ScalarField(grid, 10.0), 4.0);
            for (int i = 0; i < t.size(); ++i) CHECK(t[i] == 4.0);
        }
        SUBCASE("monotone in the level")
        {
            const ScalarField f = sesolv::testing::random_field(grid, 3, 0.0, 9.0);
            const ScalarField lo = truncate_source(f, 2.0);
            const ScalarField hi = truncate_source(f, 5.0);
            for (int i = 0; i < f.size(); ++i) CHECK(lo[i] <= hi[i]);
        }
        SUBCASE("level below 1 is rejected")
        {
            CHECK_THROWS_AS(truncate_source(ScalarField(grid, 1.0), 0.5), InvalidArgumentError);
        }
    }

    TEST_CASE("solve_regularized: zero source gives the zero iterate for every n")
    {
        const Problem problem = constant_problem(9, 2.0, 0.0);
        for (double n : {1.0, 8.0, 1024.0}) {
            RegularizedConfig cfg;
            cfg.n = n;
            const ScalarField u = solve_regularized(problem, cfg, ScalarField(problem.grid, 0.0));
            CHECK(sup_norm(u) == 0.0);
        }
    }

    TEST_CASE("solve_regularized: manufactured solution at fixed n")
    {
        const int m = 65;
        const double n = 50.0;
        auto grid = unit_interval(m);
        // f := (u* + 1/n)^2 pi^2 sin(pi x) makes u* = sin(pi x) the solution.
        const ScalarField f = sample_source(grid, [n](const Point& p) {
            const double s = std::sin(pi * p.x);
            const double shifted = s + 1.0 / n;
            return shifted * shifted * pi * pi * s;
        });
        CHECK(sup_norm(f) <= n); // truncation must stay inactive
        const Problem problem(grid, 2.0, f);
        RegularizedConfig cfg;
        cfg.n = n;
        const ScalarField u = solve_regularized(problem, cfg, ScalarField(grid, 0.0));
        double err = 0.0;
        for (int i = 0; i < u.size(); ++i)
            err = std::max(err, std::abs(u[i] - std::sin(pi * grid->node(i).x)));
        CHECK(err <= 2e-3); // O(h^2)
    }

    TEST_CASE("solve_regularized agrees with the damped fixed-point oracle")
    {
        const Problem problem = constant_problem(129, 2.0);
        RegularizedConfig cfg;
        cfg.n = 10.0;
        NewtonStats stats;
        const ScalarField u =
            solve_regularized(problem, cfg, ScalarField(problem.grid, 0.0), &stats);
        const ScalarField oracle = picard_oracle(problem, 10.0);
        CHECK(std::abs(u[64] - oracle[64]) <= 1e-9);
        CHECK(stats.final_residual <= cfg.newton_tol);
    }

    TEST_CASE("solve_regularized validates the initial guess")
    {
        const Problem problem = constant_problem(9, 2.0);
        RegularizedConfig cfg;
        ScalarField neg(problem.grid, 0.0);
        neg[3] = -0.1;
        CHECK_THROWS_AS(solve_regularized(problem, cfg, neg), InvalidArgumentError);
        ScalarField bdry(problem.grid, 0.0);
        bdry[0] = 0.5;
        CHECK_THROWS_AS(solve_regularized(problem, cfg, bdry), InvalidArgumentError);
    }

    TEST_CASE("solve_regularized reports Newton failure with history")
    {
        const Problem problem = constant_problem(33, 4.0);
        RegularizedConfig cfg;
        cfg.n = 4096.0;
        cfg.max_newton_iters = 2;
        try {
            solve_regularized(problem, cfg, ScalarField(problem.grid, 0.0));
            FAIL("expected SolveError");
        } catch (const SolveError& e) {
            CHECK_FALSE(e.residual_history().empty());
        }
    }

    TEST_CASE("every returned iterate is nonnegative")
    {
        const Problem problem = constant_problem(33, 3.0);
        const DiscreteOperator opr = assemble_neg_laplacian(problem.grid);
        ScalarField u(problem.grid, 0.0);
        for (double n : {1.0, 4.0, 64.0, 4096.0}) {
            RegularizedConfig cfg;
            cfg.n = n;
            u = solve_regularized(problem, opr, cfg, u);
            for (int i = 0; i < u.size(); ++i) CHECK(u[i] >= 0.0);
        }
    }

    TEST_CASE("regularized solutions are monotone in n")
    {
        const Problem problem = constant_problem(33, 2.0);
        const DiscreteOperator opr = assemble_neg_laplacian(problem.grid);
        ScalarField prev(problem.grid, 0.0);
        bool first = true;
        ScalarField u(problem.grid, 0.0);
        for (double n = 1.0; n <= 65536.0; n *= 2.0) {
            RegularizedConfig cfg;
            cfg.n = n;
            u = solve_regularized(problem, opr, cfg, u);
            if (!first)
                for (int i = 0; i < u.size(); ++i) CHECK(u[i] >= prev[i] - 1e-9);
            prev = u;
            first = false;
        }
    }

    TEST_CASE("solve_singular: zero source is degenerate, not an error")
    {
        const Problem problem = constant_problem(9, 2.0, 0.0);
        const SolveReport report = solve_singular(problem);
        CHECK(report.converged);
        CHECK_FALSE(report.positive);
        CHECK(report.interior_min == 0.0);
        CHECK(sup_norm(report.u) == 0.0);
    }

    TEST_CASE("solve_singular: manufactured singular problem")
    {
        // f = pi^2 sin^3(pi x), beta = 2: then f / u^2 = pi^2 sin = -u'' for
        // u = sin(pi x).
        const Problem problem = unit_problem(257, 2.0, [](const Point& p) {
            const double s = std::sin(pi * p.x);
            return pi * pi * s * s * s;
        });
        const SolveReport report = solve_singular(problem);
        CHECK(report.converged);
        CHECK(report.positive);
        REQUIRE(report.steps.size() >= 2);
        CHECK(report.steps.back().interior_change <= 1e-8);

        double err = 0.0;
        for (int i = 0; i < report.u.size(); ++i)
            err = std::max(err, std::abs(report.u[i] - std::sin(pi * problem.grid->node(i).x)));
        CHECK(err <= 5e-4);

        const double h = problem.grid->spacing();
        CHECK(report.weak_residual <= 10.0 * 1e-8 / (h * h));
    }

    TEST_CASE("solve_singular: scaling identity")
    {
        auto grid = unit_interval(65);
        const double beta = 2.0, lambda = 3.0;
        ContinuationSchedule tight;
        tight.interior_tol = 1e-9;
        const Problem base(grid, beta, ScalarField(grid, 1.0));
        const Problem scaled(grid, beta,
                             ScalarField(grid, std::pow(lambda, 1.0 + beta)));
        const ScalarField u = solve_singular(base, tight).u;
        const ScalarField v = solve_singular(scaled, tight).u;
        double worst = 0.0;
        for (int i = 0; i < u.size(); ++i)
            worst = std::max(worst, std::abs(v[i] - lambda * u[i]));
        CHECK(worst <= 1e-7);
    }

    TEST_CASE("solve_singular: fine-grid center-value oracle for beta = 3")
    {
        // Independent oracle: the same continuation on much finer grids with
        // interior_tol 1e-10, Richardson-extrapolated. The m = 513 value
        // differs from the extrapolated limit by the near-boundary
        // discretization error of the d^(1/2) singularity, a few 1e-4.
        ContinuationSchedule tight;
        tight.interior_tol = 1e-10;
        auto center = [&](int m, const ContinuationSchedule& s) {
            const Problem p = constant_problem(m, 3.0);
            return solve_singular(p, s).u[(m - 1) / 2];
        };
        const double u513 = center(513, ContinuationSchedule{});
        const double u2049 = center(2049, tight);
        const double u4097 = center(4097, tight);
        const double oracle = u4097 + (u4097 - u2049) / 3.0;
        CHECK(std::abs(u513 - oracle) <= 1e-3);
        // The finer solves themselves must be mutually consistent.
        CHECK(std::abs(u4097 - oracle) <= 1e-4);
    }

    TEST_CASE("weak-form residual bound holds for a genuinely singular solve")
    {
        const Problem problem = constant_problem(129, 3.0);
        const SolveReport report = solve_singular(problem);
        const double h = problem.grid->spacing();
        CHECK(report.converged);
        CHECK(report.weak_residual <= 10.0 * 1e-8 / (h * h));
    }

    TEST_CASE("solve_singular: n_max exhaustion raises with history")
    {
        const Problem problem = constant_problem(17, 2.0);
        ContinuationSchedule schedule;
        schedule.n_max = 4.0;
        schedule.interior_tol = 1e-14;
        try {
            solve_singular(problem, schedule);
            FAIL("expected SolveError");
        } catch (const SolveError& e) {
            CHECK(e.residual_history().size() >= 2);
        }
    }

    TEST_CASE("solve_singular is bitwise deterministic")
    {
        const Problem problem = constant_problem(65, 2.5);
        const SolveReport a = solve_singular(problem);
        const SolveReport b = solve_singular(problem);
        REQUIRE(a.u.size() == b.u.size());
        CHECK(std::memcmp(a.u.values().data(), b.u.values().data(),
                          sizeof(double) * a.u.size()) == 0);
        REQUIRE(a.steps.size() == b.steps.size());
        for (std::size_t i = 0; i < a.steps.size(); ++i)
            CHECK(a.steps[i].interior_change == b.steps[i].interior_change);
    }

    TEST_CASE("interior positivity grows with the margin")
    {
        const Problem problem = constant_problem(65, 2.0);
        const SolveReport report = solve_singular(problem);
        double prev = 0.0;
        for (double margin : {1.0 / 16.0, 1.0 / 8.0, 1.0 / 4.0}) {
            const double lo = interior_min(report.u, margin);
            CHECK(lo > 0.0);
            CHECK(lo >= prev);
            prev = lo;
        }
    }

    TEST_CASE("interior_min")
    {
        auto grid = unit_interval(5);
        CHECK(interior_min(ScalarField(grid, 1.0), 0.1) == 1.0);
        const ScalarField s = sample(grid, [](const Point& p) { return std::sin(pi * p.x); });
        CHECK(interior_min(s, 0.25) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
        auto rect = build_grid(Rectangle{0, 1, 0, 1}, 4);
        CHECK_THROWS_AS(interior_min(ScalarField(rect, 1.0), 0.45), InvalidArgumentError);
    }

    TEST_CASE("dirichlet_excess")
    {
        auto grid = unit_interval(33);
        SUBCASE("vanishes when the field never exceeds eps")
        {
            const ScalarField u =
                sample(grid, [](const Point& p) { return 0.3 * std::sin(pi * p.x); });
            CHECK(dirichlet_excess(u, 0.5) == 0.0);
        }
        SUBCASE("matches the closed-form integral for sin above 1/2")
        {
            // (sin - 1/2)^+ kinks exactly at x = 1/6 and 5/6 when (m-1) is a
            // multiple of 6; then the energy converges at O(h^2) to
            // pi^2/3 - pi sqrt(3)/4 over (1/6, 5/6).
            const double target = pi * pi / 3.0 - pi * std::sqrt(3.0) / 4.0;
            double coarse = 0.0, fine = 0.0;
            for (int m : {253, 505}) {
                auto g = build_grid(Interval{0, 1}, m);
                const ScalarField u =
                    sample(g, [](const Point& p) { return std::sin(pi * p.x); });
                const double e = dirichlet_excess(u, 0.5);
                (m == 253 ? coarse : fine) = std::abs(e - target);
            }
            CHECK(coarse <= 1e-3);
            CHECK(coarse / fine >= 3.0);
        }
        SUBCASE("rejects negative fields and nonzero boundary values")
        {
            ScalarField bad(grid, 0.0);
            bad[5] = -0.1;
            CHECK_THROWS_AS(dirichlet_excess(bad, 0.1), InvalidArgumentError);
            ScalarField bdry(grid, 0.0);
            bdry[0] = 1.0;
            CHECK_THROWS_AS(dirichlet_excess(bdry, 0.1), InvalidArgumentError);
        }
        SUBCASE("ladder stays bounded for beta = 3")
        {
            const std::vector<int> ms = {65, 129, 257, 513};
            const auto vals = dirichlet_excess_ladder(
                Interval{0, 1}, 3.0, [](const Point&) { return 1.0; }, 0.1, ms);
            REQUIRE(vals.size() == 4);
            const double lo = *std::min_element(vals.begin(), vals.end());
            const double hi = *std::max_element(vals.begin(), vals.end());
            CHECK(hi / lo <= 1.2);
        }
    }

    TEST_CASE("margin_region slack keeps representable tie nodes")
    {
        auto grid = unit_interval(17);
        const auto region = margin_region(*grid, 1.0 / 16.0);
        // dist >= 1/16 keeps nodes 1..15.
        CHECK(region.size() == 15);
    }
}
