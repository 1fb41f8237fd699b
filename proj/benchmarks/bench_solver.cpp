// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "sesolv/grid.hpp"
#include "sesolv/linalg.hpp"
#include "sesolv/operators.hpp"
#include "sesolv/solver.hpp"
#include "sesolv/variational.hpp"

using namespace sesolv;

static void BM_AssembleRectangle(benchmark::State& state)
{
    const int m = static_cast<int>(state.range(0));
    auto grid = build_grid(Rectangle{0, 1, 0, 1}, m);
    for (auto _ : state)
        benchmark::DoNotOptimize(assemble_neg_laplacian(grid));
}
BENCHMARK(BM_AssembleRectangle)->Arg(33)->Arg(65)->Arg(129);

static void BM_BandCholeskyFactor2D(benchmark::State& state)
{
    const int m = static_cast<int>(state.range(0));
    auto grid = build_grid(Rectangle{0, 1, 0, 1}, m);
    const DiscreteOperator opr = assemble_neg_laplacian(grid);
    for (auto _ : state) {
        BandCholesky chol;
        benchmark::DoNotOptimize(chol.factorize(opr.band()));
    }
}
BENCHMARK(BM_BandCholeskyFactor2D)->Arg(33)->Arg(65);

static void BM_SolveLinear1D(benchmark::State& state)
{
    const int m = static_cast<int>(state.range(0));
    auto grid = build_grid(Interval{0, 1}, m);
    const DiscreteOperator opr = assemble_neg_laplacian(grid);
    const ScalarField rhs(grid, 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_linear(opr, rhs));
}
BENCHMARK(BM_SolveLinear1D)->Arg(257)->Arg(1025)->Arg(4097);

static void BM_ConjugateGradient2D(benchmark::State& state)
{
    const int m = static_cast<int>(state.range(0));
    auto grid = build_grid(Rectangle{0, 1, 0, 1}, m);
    const DiscreteOperator opr = assemble_neg_laplacian(grid);
    std::vector<double> b(opr.size(), 1.0), x(opr.size());
    for (auto _ : state) {
        std::fill(x.begin(), x.end(), 0.0);
        benchmark::DoNotOptimize(conjugate_gradient(
            [&](std::span<const double> in, std::span<double> out) { opr.apply(in, out); },
            opr.diagonal(), b, x, 1e-12, 10 * opr.size()));
    }
}
BENCHMARK(BM_ConjugateGradient2D)->Arg(33)->Arg(65);

static void BM_SolveSingular1D(benchmark::State& state)
{
    const int m = static_cast<int>(state.range(0));
    auto grid = build_grid(Interval{0, 1}, m);
    const Problem problem(grid, 2.0, ScalarField(grid, 1.0));
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_singular(problem));
}
BENCHMARK(BM_SolveSingular1D)->Arg(129)->Arg(257)->Arg(1025);

static void BM_MinimizeObstacle(benchmark::State& state)
{
    const int m = static_cast<int>(state.range(0));
    auto grid = build_grid(Interval{0, 1}, m);
    const ScalarField f(grid, 1.0);
    const Problem problem(grid, 2.0, f);
    const ScalarField v = solve_singular(problem).u;
    const ObstacleProblem obstacle(f, v, TruncationParams(100.0, 2.0));
    for (auto _ : state)
        benchmark::DoNotOptimize(minimize_obstacle(obstacle, 1e-9));
}
BENCHMARK(BM_MinimizeObstacle)->Arg(65)->Arg(129);

BENCHMARK_MAIN();
