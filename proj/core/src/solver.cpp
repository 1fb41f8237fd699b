// SPDX-License-Identifier: Apache-2.0
#include "sesolv/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "sesolv/errors.hpp"

namespace sesolv {

Problem::Problem(std::shared_ptr<const Grid> grid_, double beta_, ScalarField f_)
    : grid(std::move(grid_)), beta(beta_), f(std::move(f_))
{
    if (!grid) throw ShapeError("problem requires a grid");
    if (f.grid_ptr() != grid) throw ShapeError("source lives on a different grid");
    if (!(beta > 0.0)) throw InvalidArgumentError("beta must be positive");
    for (double v : f.values())
        if (v < 0.0) throw DataError("source must be nonnegative");
}

bool Problem::source_is_zero() const
{
    for (double v : f.values())
        if (v != 0.0) return false;
    return true;
}

ScalarField truncate_source(const ScalarField& f, double level)
{
    if (!(level >= 1.0)) throw InvalidArgumentError("truncation level must be >= 1");
    std::vector<double> v(f.size());
    for (int i = 0; i < f.size(); ++i)
        v[i] = std::min(f[i], level);
    return {f.grid_ptr(), std::move(v)};
}

double resolve_margin(const Domain& domain, double margin)
{
    return margin < 0.0 ? width(domain) / 16.0 : margin;
}

std::vector<int> margin_region(const Grid& grid, double margin)
{
    if (margin < 0.0 || margin >= 0.5 * width(grid.domain()))
        throw InvalidArgumentError("margin must lie in [0, width/2)");
    const double cut = margin - 1e-13 * width(grid.domain());
    std::vector<int> nodes;
    for (int i = 0; i < grid.node_count(); ++i)
        if (grid.boundary_distance(i) >= cut) nodes.push_back(i);
    if (nodes.empty())
        throw InvalidArgumentError("margin leaves no nodes in the interior region");
    return nodes;
}

double interior_min(const ScalarField& field, double margin)
{
    double best = std::numeric_limits<double>::infinity();
    for (int i : margin_region(field.grid(), margin))
        best = std::min(best, field[i]);
    return best;
}

namespace {

ScalarField check_init(const Problem& problem, const ScalarField& init)
{
    if (init.grid_ptr() != problem.grid)
        throw ShapeError("initial guess lives on a different grid");
    for (int i = 0; i < init.size(); ++i)
        if (init[i] < 0.0)
            throw InvalidArgumentError("initial guess must be nonnegative");
    return with_zero_boundary(init, "initial guess");
}

struct NewtonWorkspace {
    std::vector<double> f_trunc;   // min(f, n) at interior nodes
    std::vector<double> rhs;       // w_i * g(u_i)
    std::vector<double> residual;  // S u - rhs
    std::vector<double> shift;     // Jacobian diagonal addition
    std::vector<double> step;
    std::vector<double> trial;
    std::vector<double> su;
};

// Scaled sup-norm residual of the current iterate; fills ws.rhs and
// ws.residual. Returns {residual_norm, scale}.
std::pair<double, double> regularized_residual(const DiscreteOperator& opr,
                                               const std::vector<double>& u, double beta,
                                               double inv_n, NewtonWorkspace& ws)
{
    const int n = opr.size();
    double scale = 1.0, rnorm = 0.0;
    opr.apply(u, ws.su);
    for (int r = 0; r < n; ++r) {
        ws.rhs[r] = opr.rhs_scale()[r] * ws.f_trunc[r] * std::pow(u[r] + inv_n, -beta);
        ws.residual[r] = ws.su[r] - ws.rhs[r];
        scale = std::max(scale, 1.0 + std::abs(ws.rhs[r]));
        rnorm = std::max(rnorm, std::abs(ws.residual[r]));
    }
    return {rnorm, scale};
}

std::vector<double> solve_regularized_interior(const Problem& problem,
                                               const DiscreteOperator& opr,
                                               const RegularizedConfig& cfg,
                                               std::vector<double> u, NewtonStats* stats)
{
    if (!(cfg.n >= 1.0)) throw InvalidArgumentError("regularization index n must be >= 1");
    if (!(cfg.newton_tol > 0.0)) throw InvalidArgumentError("newton_tol must be positive");
    if (!(cfg.damping > 0.0 && cfg.damping < 1.0))
        throw InvalidArgumentError("damping factor must lie in (0, 1)");

    const int n = opr.size();
    const double inv_n = 1.0 / cfg.n;
    const double floor = -0.5 * inv_n; // iterates stay above, so u + 1/n >= 1/(2n)
    const double beta = problem.beta;

    NewtonWorkspace ws;
    ws.f_trunc.resize(n);
    for (int r = 0; r < n; ++r)
        ws.f_trunc[r] = std::min(problem.f[opr.grid().interior_nodes()[r]], cfg.n);
    ws.rhs.resize(n);
    ws.residual.resize(n);
    ws.shift.resize(n);
    ws.step.resize(n);
    ws.trial.resize(n);
    ws.su.resize(n);

    std::vector<double> history;
    BandCholesky factor;
    bool polish = false;
    double rnorm = 0.0, scale = 1.0;

    int iter = 0;
    for (; iter < cfg.max_newton_iters; ++iter) {
        std::tie(rnorm, scale) = regularized_residual(opr, u, beta, inv_n, ws);
        history.push_back(rnorm / scale);
        if (rnorm <= cfg.newton_tol * scale) {
            if (polish) break;
            polish = true; // one extra step to park the residual near round-off
        }

        for (int r = 0; r < n; ++r)
            ws.shift[r] = opr.rhs_scale()[r] * beta * ws.f_trunc[r] *
                          std::pow(u[r] + inv_n, -beta - 1.0);
        if (!factor.factorize(opr.band(ws.shift)))
            throw SolveError("regularized solve: Jacobian factorization broke down", history);
        factor.solve(ws.residual, ws.step);

        double t = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 80; ++bt) {
            bool feasible = true;
            for (int r = 0; r < n; ++r) {
                ws.trial[r] = u[r] - t * ws.step[r];
                if (ws.trial[r] < floor) {
                    feasible = false;
                    break;
                }
            }
            if (feasible) {
                auto [rn_try, sc_try] = regularized_residual(opr, ws.trial, beta, inv_n, ws);
                if (rn_try <= (1.0 - 1e-4 * t) * rnorm || rn_try <= cfg.newton_tol * sc_try) {
                    u.swap(ws.trial);
                    accepted = true;
                    break;
                }
            }
            t *= cfg.damping;
        }
        if (!accepted) {
            if (polish) break; // converged; the polish step just cannot improve
            throw SolveError("regularized solve: backtracking stalled at residual " +
                                 std::to_string(rnorm / scale),
                             history);
        }
    }

    std::tie(rnorm, scale) = regularized_residual(opr, u, beta, inv_n, ws);
    if (rnorm > cfg.newton_tol * scale)
        throw SolveError("regularized solve: no convergence in " +
                             std::to_string(cfg.max_newton_iters) + " Newton iterations",
                         history);

    // The exact solution is nonnegative (M-matrix, nonnegative rhs); clamp
    // round-off level negatives and reject anything larger.
    for (int r = 0; r < n; ++r) {
        if (u[r] < 0.0) {
            if (u[r] < -1e-10 * scale)
                throw SolveError("regularized solve produced a negative value " +
                                     std::to_string(u[r]),
                                 history);
            u[r] = 0.0;
        }
    }

    if (stats) {
        stats->iterations = iter;
        stats->final_residual = rnorm / scale;
    }
    return u;
}

} // namespace

ScalarField solve_regularized(const Problem& problem, const DiscreteOperator& opr,
                              const RegularizedConfig& cfg, const ScalarField& init,
                              NewtonStats* stats)
{
    const ScalarField clean = check_init(problem, init);
    if (opr.grid_ptr() != problem.grid)
        throw ShapeError("operator was assembled on a different grid");
    auto u = solve_regularized_interior(problem, opr, cfg, restrict_interior(clean), stats);
    return extend_by_zero(problem.grid, u);
}

ScalarField solve_regularized(const Problem& problem, const RegularizedConfig& cfg,
                              const ScalarField& init, NewtonStats* stats)
{
    return solve_regularized(problem, assemble_neg_laplacian(problem.grid), cfg, init, stats);
}

SolveReport solve_singular(const Problem& problem, const ContinuationSchedule& schedule,
                           const std::optional<ScalarField>& init)
{
    if (!(schedule.n0 >= 1.0)) throw InvalidArgumentError("n0 must be >= 1");
    if (!(schedule.growth > 1.0)) throw InvalidArgumentError("growth factor must exceed 1");
    if (!(schedule.interior_tol > 0.0)) throw InvalidArgumentError("interior_tol must be positive");
    if (!(schedule.n0 <= schedule.n_max)) throw InvalidArgumentError("n0 must not exceed n_max");

    const double margin = resolve_margin(problem.grid->domain(), schedule.margin);
    const std::vector<int> region = margin_region(*problem.grid, margin);

    SolveReport report;
    report.margin = margin;

    if (problem.source_is_zero()) {
        // Degenerate case: the zero field is the limit, but u > 0 fails.
        report.u = ScalarField(problem.grid, 0.0);
        report.converged = true;
        report.positive = false;
        report.interior_min = 0.0;
        report.weak_residual = 0.0;
        return report;
    }

    const DiscreteOperator opr = assemble_neg_laplacian(problem.grid);

    ScalarField u_prev;
    if (init) {
        u_prev = check_init(problem, *init);
    } else {
        u_prev = solve_linear(opr, truncate_source(problem.f, schedule.n0));
        for (double& v : u_prev.values())
            v = std::max(v, 0.0);
    }

    RegularizedConfig cfg;
    cfg.newton_tol = schedule.newton_tol;
    cfg.max_newton_iters = schedule.max_newton_iters;
    cfg.damping = schedule.damping;

    std::vector<double> change_history;
    bool converged = false;
    ScalarField u = u_prev;
    for (double n = schedule.n0; n <= schedule.n_max * (1.0 + 1e-12); n *= schedule.growth) {
        cfg.n = n;
        NewtonStats stats;
        u = solve_regularized(problem, opr, cfg, u_prev, &stats);

        double change = 0.0;
        for (int idx : region)
            change = std::max(change, std::abs(u[idx] - u_prev[idx]));
        report.steps.push_back({n, change, stats.iterations, stats.final_residual});
        change_history.push_back(change);

        if (report.steps.size() >= 2 && change <= schedule.interior_tol) {
            converged = true;
            break;
        }
        u_prev = u;
    }
    if (!converged)
        throw SolveError("continuation reached n_max = " + std::to_string(schedule.n_max) +
                             " with interior change above " +
                             std::to_string(schedule.interior_tol),
                         change_history);

    report.u = u;
    report.converged = true;
    report.interior_min = interior_min(u, margin);
    report.positive = report.interior_min > 0.0;

    // Residual of the singular equation itself at the converged field.
    double weak = 0.0;
    std::vector<double> ui = restrict_interior(u);
    std::vector<double> su(opr.size());
    opr.apply(ui, su);
    for (int r = 0; r < opr.size(); ++r) {
        const int idx = problem.grid->interior_nodes()[r];
        if (!(u[idx] > 0.0)) continue;
        const double lhs = su[r] / opr.rhs_scale()[r];
        const double rhs = problem.f[idx] * std::pow(u[idx], -problem.beta);
        weak = std::max(weak, std::abs(lhs - rhs));
    }
    report.weak_residual = weak;
    return report;
}

double dirichlet_excess(const ScalarField& u, double eps)
{
    if (!(eps > 0.0)) throw InvalidArgumentError("eps must be positive");
    for (int i = 0; i < u.size(); ++i)
        if (u[i] < 0.0) throw InvalidArgumentError("field must be nonnegative");
    const ScalarField clean = with_zero_boundary(u, "field");
    return h1_seminorm_sq(shifted_positive_part(clean, eps), 0.0);
}

std::vector<double> dirichlet_excess_ladder(const Domain& domain, double beta,
                                            const SourceFn& f, double eps,
                                            std::span<const int> resolutions,
                                            const ContinuationSchedule& schedule)
{
    std::vector<double> out;
    out.reserve(resolutions.size());
    for (int m : resolutions) {
        auto grid = build_grid(domain, m);
        Problem problem(grid, beta, sample_source(grid, f));
        out.push_back(dirichlet_excess(solve_singular(problem, schedule).u, eps));
    }
    return out;
}

} // namespace sesolv
