// SPDX-License-Identifier: Apache-2.0
#include "sesolv/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sesolv/errors.hpp"
#include "sesolv/operators.hpp"

namespace sesolv {

TruncationParams::TruncationParams(double level_, double beta_) : level(level_), beta(beta_)
{
    if (!(level >= 1.0))
        throw InvalidArgumentError("truncation level must be >= 1");
    if (!(beta > 1.0))
        throw InvalidArgumentError("truncation requires beta > 1");
}

double TruncationParams::kink() const
{
    return std::pow(level, -1.0 / beta);
}

double TruncationParams::slope(double s) const
{
    if (s <= 0.0) return -level;
    return std::max(-std::pow(s, -beta), -level);
}

double TruncationParams::potential(double s) const
{
    const double sk = kink();
    auto smooth = [this](double t) { return (std::pow(t, 1.0 - beta) - 1.0) / (beta - 1.0); };
    if (s >= sk) return smooth(s);
    return smooth(sk) + level * (sk - s);
}

double truncate_odd(double s, double tau)
{
    if (!(tau > 0.0)) throw InvalidArgumentError("tau must be positive");
    return std::clamp(s, -tau, tau);
}

double obstacle_energy(const ScalarField& phi, const ScalarField& f, const TruncationParams& p)
{
    require_same_grid(phi, f);
    double reaction = 0.0;
    for (int i = 0; i < phi.size(); ++i)
        reaction += phi.grid().quad_weight(i) * f[i] * p.potential(phi[i]);
    return 0.5 * h1_seminorm_sq(phi, 0.0) + reaction;
}

ObstacleProblem::ObstacleProblem(ScalarField f_, ScalarField obstacle_, TruncationParams params_)
    : f(std::move(f_)), obstacle(std::move(obstacle_)), params(params_)
{
    require_same_grid(f, obstacle);
    for (double v : f.values())
        if (v < 0.0) throw DataError("obstacle problem requires a nonnegative source");
    for (double v : obstacle.values())
        if (v < 0.0) throw DataError("obstacle must be nonnegative");
}

namespace {

constexpr double kActiveBand = 1e-10;

struct ObstacleWork {
    const DiscreteOperator opr;
    std::vector<double> upper;    // obstacle at interior nodes
    std::vector<double> source;   // quad weight * f at interior nodes
    double boundary_energy = 0.0; // constant reaction term from boundary nodes

    ObstacleWork(const ObstacleProblem& problem)
        : opr(assemble_neg_laplacian(problem.f.grid_ptr()))
    {
        const Grid& g = problem.f.grid();
        upper.resize(g.interior_count());
        source.resize(g.interior_count());
        for (int r = 0; r < g.interior_count(); ++r) {
            const int idx = g.interior_nodes()[r];
            upper[r] = problem.obstacle[idx];
            source[r] = g.quad_weight(idx) * problem.f[idx];
        }
        for (int idx = 0; idx < g.node_count(); ++idx)
            if (g.is_boundary(idx))
                boundary_energy +=
                    g.quad_weight(idx) * problem.f[idx] * problem.params.potential(0.0);
    }
};

double energy_interior(const ObstacleWork& ws, const TruncationParams& p,
                       const std::vector<double>& w, std::vector<double>& sw)
{
    ws.opr.apply(w, sw);
    double e = 0.0;
    for (std::size_t r = 0; r < w.size(); ++r)
        e += 0.5 * w[r] * sw[r] + ws.source[r] * p.potential(w[r]);
    return e + ws.boundary_energy;
}

void gradient_interior(const ObstacleWork& ws, const TruncationParams& p,
                       const std::vector<double>& w, std::vector<double>& sw,
                       std::vector<double>& g)
{
    ws.opr.apply(w, sw);
    for (std::size_t r = 0; r < w.size(); ++r)
        g[r] = sw[r] + ws.source[r] * p.slope(w[r]);
}

// Projected gradient: the portion of the gradient that still points into the
// feasible box [0, upper].
double projected_gradient_norm(const std::vector<double>& w, const std::vector<double>& g,
                               const std::vector<double>& upper)
{
    double norm = 0.0;
    for (std::size_t r = 0; r < w.size(); ++r) {
        if (upper[r] <= 2.0 * kActiveBand) continue; // box degenerates to a point
        double pg;
        if (w[r] <= kActiveBand)
            pg = std::min(g[r], 0.0);
        else if (w[r] >= upper[r] - kActiveBand)
            pg = std::max(g[r], 0.0);
        else
            pg = g[r];
        norm = std::max(norm, std::abs(pg));
    }
    return norm;
}

} // namespace

ObstacleResult minimize_obstacle(const ObstacleProblem& problem, double tol, int max_iters,
                                 const std::optional<ScalarField>& start)
{
    if (!(tol > 0.0)) throw InvalidArgumentError("tolerance must be positive");
    ObstacleWork ws(problem);
    const TruncationParams& p = problem.params;
    const int n = ws.opr.size();

    // Lipschitz bound of the gradient: stiffness diagonal plus the largest
    // slope derivative beta * k^((beta+1)/beta) weighted by the source.
    const double slope_lipschitz = p.beta * std::pow(p.level, (p.beta + 1.0) / p.beta);
    double lip = 1e-30;
    for (int r = 0; r < n; ++r)
        lip = std::max(lip, ws.opr.diagonal()[r] + ws.source[r] * slope_lipschitz);

    // Default start is the obstacle: feasible, and close to the minimizer
    // when the obstacle is itself a near-solution.
    std::vector<double> w(ws.upper), g(n), sw(n), w_new(n), g_new(n);
    if (start) {
        require_same_grid(*start, problem.f);
        w = restrict_interior(*start);
        for (int r = 0; r < n; ++r) w[r] = std::clamp(w[r], 0.0, ws.upper[r]);
    }

    std::vector<double> sup_history;
    double energy = energy_interior(ws, p, w, sw);
    gradient_interior(ws, p, w, sw, g);

    // Nonmonotone reference window for the projected line search.
    constexpr int kWindow = 10;
    std::vector<double> recent(kWindow, energy);

    double step = 1.0 / lip;
    const double step_min = 1e-10 / lip;
    const double step_max = 1e10 / lip;

    ObstacleResult result;
    int iter = 0;
    bool converged = false;
    for (; iter < max_iters; ++iter) {
        const double pg_norm = projected_gradient_norm(w, g, ws.upper);
        sup_history.push_back(pg_norm);
        if (pg_norm <= tol) {
            converged = true;
            break;
        }

        const double e_ref = *std::max_element(recent.begin(), recent.end());
        double t = std::clamp(step, step_min, step_max);
        double e_new = 0.0;
        bool accepted = false;
        for (int bt = 0; bt < 120; ++bt) {
            double gd = 0.0;
            for (int r = 0; r < n; ++r) {
                w_new[r] = std::clamp(w[r] - t * g[r], 0.0, ws.upper[r]);
                gd += g[r] * (w_new[r] - w[r]);
            }
            e_new = energy_interior(ws, p, w_new, sw);
            // Absolute slack keeps the search from stalling on round-off once
            // the energy differences fall below double precision.
            if (e_new <= e_ref + 1e-4 * gd + 1e-14 * (1.0 + std::abs(e_ref))) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted)
            throw SolveError("obstacle minimization: projected line search stalled", sup_history);

        gradient_interior(ws, p, w_new, sw, g_new);

        // Barzilai-Borwein step for the next iteration.
        double sdots = 0.0, sdoty = 0.0;
        for (int r = 0; r < n; ++r) {
            const double s = w_new[r] - w[r];
            const double y = g_new[r] - g[r];
            sdots += s * s;
            sdoty += s * y;
        }
        step = sdoty > 0.0 ? sdots / sdoty : step_max;

        w.swap(w_new);
        g.swap(g_new);
        energy = e_new;
        recent[iter % kWindow] = energy;
    }
    if (!converged)
        throw SolveError("obstacle minimization: no convergence in " + std::to_string(max_iters) +
                             " iterations (projected gradient " +
                             std::to_string(sup_history.back()) + ")",
                         sup_history);

    for (int r = 0; r < n; ++r)
        w[r] = std::clamp(w[r], 0.0, ws.upper[r]);

    result.w = extend_by_zero(problem.f.grid_ptr(), w);
    result.energy = energy_interior(ws, p, w, sw);
    result.iterations = iter;
    gradient_interior(ws, p, w, sw, g);
    for (int r = 0; r < n; ++r) {
        if (ws.upper[r] <= 2.0 * kActiveBand) continue;
        if (w[r] <= kActiveBand)
            result.kkt_lower = std::max(result.kkt_lower, -g[r]);
        else if (w[r] >= ws.upper[r] - kActiveBand)
            result.kkt_upper = std::max(result.kkt_upper, g[r]);
        else
            result.kkt_interior = std::max(result.kkt_interior, std::abs(g[r]));
    }
    result.kkt_lower = std::max(result.kkt_lower, 0.0);
    result.kkt_upper = std::max(result.kkt_upper, 0.0);
    return result;
}

double variational_residual(const ScalarField& w, const ScalarField& psi, const ScalarField& f,
                            const TruncationParams& p)
{
    require_same_grid(w, psi);
    require_same_grid(w, f);
    const Grid& grid = w.grid();
    for (int i = 0; i < psi.size(); ++i)
        if (psi[i] < 0.0)
            throw InvalidArgumentError("test field must be nonnegative");
    const ScalarField test = with_zero_boundary(psi, "test field");
    double pairing = 0.0;
    for (const GridEdge& e : grid.edges())
        pairing += e.coeff * (w[e.a] - w[e.b]) * (test[e.a] - test[e.b]);
    for (int i = 0; i < w.size(); ++i)
        pairing += grid.quad_weight(i) * f[i] * p.slope(w[i]) * test[i];
    return pairing;
}

ComparisonCertificate comparison_certificate(const ScalarField& u, const ScalarField& v,
                                             const ScalarField& f, const TruncationParams& p,
                                             double eps, double tau, double minimize_tol,
                                             int minimize_max_iters)
{
    require_same_grid(u, v);
    require_same_grid(u, f);
    if (!(eps > 0.0)) throw InvalidArgumentError("eps must be positive");
    if (!(tau > 0.0)) throw InvalidArgumentError("tau must be positive");
    if (!(std::pow(eps, -p.beta) < p.level))
        throw InvalidArgumentError(
            "comparison certificate requires eps^-beta < k: eps^-beta = " +
            std::to_string(std::pow(eps, -p.beta)) + ", k = " + std::to_string(p.level));

    ComparisonCertificate cert;
    cert.eps = eps;
    cert.tau = tau;
    cert.minimizer = minimize_obstacle(ObstacleProblem(f, v, p), minimize_tol, minimize_max_iters);
    const ScalarField& w = cert.minimizer.w;

    std::vector<double> s(u.size());
    cert.max_excess = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < u.size(); ++i) {
        const double excess = u[i] - w[i] - eps;
        cert.max_excess = std::max(cert.max_excess, excess);
        s[i] = truncate_odd(std::max(excess, 0.0), tau);
    }
    ScalarField test(u.grid_ptr(), std::move(s));

    cert.gradient_term = h1_seminorm_sq(test, 0.0);
    double source_term = 0.0;
    for (int i = 0; i < u.size(); ++i)
        source_term += u.grid().quad_weight(i) * f[i] * (-p.slope(u[i]) + p.slope(w[i])) * test[i];
    cert.source_term = source_term;
    return cert;
}

} // namespace sesolv
