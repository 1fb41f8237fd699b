// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "sesolv/field.hpp"
#include "sesolv/operators.hpp"

namespace sesolv {

/// Data of the singular problem -Lap u = f / u^beta with zero Dirichlet
/// boundary values. f must be nonnegative; beta positive.
struct Problem {
    std::shared_ptr<const Grid> grid;
    double beta = 1.0;
    ScalarField f;

    Problem(std::shared_ptr<const Grid> grid_, double beta_, ScalarField f_);

    bool source_is_zero() const;
};

/// min(f, level) nodally. The regularized problems replace f by this
/// truncation so that the right-hand side stays bounded.
ScalarField truncate_source(const ScalarField& f, double level);

/// Parameters of one regularized solve: -Lap u = min(f,n) / (u + 1/n)^beta.
struct RegularizedConfig {
    double n = 1.0;
    double newton_tol = 1e-11;   // on the residual, relative to 1 + |rhs|
    int max_newton_iters = 100;
    double damping = 0.5;        // backtracking factor
};

struct NewtonStats {
    int iterations = 0;
    double final_residual = 0.0; // scaled residual at the accepted iterate
};

/// Damped Newton for the regularized problem. init must be nonnegative with
/// zero boundary values; the backtracking keeps every iterate above -1/(2n)
/// so the nonlinearity and its derivative stay bounded, and the returned
/// field is nonnegative. Throws SolveError (with the residual history) if
/// Newton does not converge within max_newton_iters.
ScalarField solve_regularized(const Problem& problem, const RegularizedConfig& cfg,
                              const ScalarField& init, NewtonStats* stats = nullptr);

/// Same, against a pre-assembled operator (used by the continuation driver).
ScalarField solve_regularized(const Problem& problem, const DiscreteOperator& opr,
                              const RegularizedConfig& cfg, const ScalarField& init,
                              NewtonStats* stats = nullptr);

/// Continuation schedule n = n0, n0*growth, n0*growth^2, ... with warm
/// starts. Stops when the sup-norm change between consecutive solutions on
/// the margin-interior region drops to interior_tol. margin < 0 selects the
/// default width/16.
struct ContinuationSchedule {
    double n0 = 1.0;
    double growth = 2.0;
    double n_max = 1099511627776.0; // 2^40
    double interior_tol = 1e-8;
    double margin = -1.0;
    double newton_tol = 1e-11;
    int max_newton_iters = 100;
    double damping = 0.5;
};

struct ContinuationStep {
    double n = 0.0;
    double interior_change = 0.0; // vs previous iterate (init for the first step)
    int newton_iterations = 0;
    double newton_residual = 0.0;
};

struct SolveReport {
    ScalarField u;
    std::vector<ContinuationStep> steps;
    double margin = 0.0;
    double interior_min = 0.0;   // over the margin-interior region
    double weak_residual = 0.0;  // max_i |(-Lap u)_i - f_i / u_i^beta|
    bool positive = false;
    bool converged = false;
};

/// Solves the singular problem as the limit of the regularized family.
/// Default init is the linear solve of the truncated source clipped to >= 0.
/// A zero source returns the zero field with positive = false (the positivity
/// requirement is unattainable); failure to converge before n_max throws
/// SolveError carrying the interior-change history.
SolveReport solve_singular(const Problem& problem, const ContinuationSchedule& schedule = {},
                           const std::optional<ScalarField>& init = {});

/// Minimum of the field over nodes at distance >= margin from the boundary.
double interior_min(const ScalarField& field, double margin);

/// Dirichlet energy of (u - eps)^+ over the full domain: the relaxed
/// zero-boundary diagnostic. u must be nonnegative with zero boundary values.
double dirichlet_excess(const ScalarField& u, double eps);

/// Re-solves the problem on a ladder of resolutions and reports the excess
/// per level; the relaxed Dirichlet condition predicts a bounded sequence.
std::vector<double> dirichlet_excess_ladder(const Domain& domain, double beta,
                                            const SourceFn& f, double eps,
                                            std::span<const int> resolutions,
                                            const ContinuationSchedule& schedule = {});

/// Nodes of the grid at distance >= margin from the boundary (with a tiny
/// slack so representable margins keep their tie nodes). Throws if empty.
std::vector<int> margin_region(const Grid& grid, double margin);

/// Schedule margin with the default resolved against the domain.
double resolve_margin(const Domain& domain, double margin);

} // namespace sesolv
