// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "sesolv/field.hpp"

namespace sesolv {

/// Truncation of the singular reaction term -s^(-beta) at level -k, together
/// with its primitive. Requires level >= 1 (the kink then sits at or below 1)
/// and beta > 1 (the closed-form primitive below is the beta > 1 branch).
struct TruncationParams {
    double level; // k
    double beta;

    TruncationParams(double level_, double beta_);

    /// Location of the kink: level^(-1/beta), where -s^(-beta) crosses -level.
    double kink() const;

    /// max(-s^(-beta), -level) for s > 0 and -level for s <= 0. Continuous,
    /// nondecreasing, with values in [-level, 0).
    double slope(double s) const;

    /// The primitive of slope() vanishing at s = 1:
    ///   s >= kink:  (s^(1-beta) - 1) / (beta - 1)
    ///   s <  kink:  value at the kink plus level * (kink - s)
    /// Convex and decreasing.
    double potential(double s) const;

    /// Identity with slope(); exposed so the derivative relation is directly
    /// testable by finite differences.
    double potential_prime(double s) const { return slope(s); }
};

/// Odd truncation at height tau: clamp(s, -tau, tau). tau must be positive.
double truncate_odd(double s, double tau);

/// The truncated obstacle energy
///   E(phi) = 1/2 * |grad phi|^2 + integral of f * potential(phi),
/// evaluated with the grid's Dirichlet-energy edges and quadrature weights.
double obstacle_energy(const ScalarField& phi, const ScalarField& f, const TruncationParams& p);

/// Minimize the truncated energy over { 0 <= phi <= obstacle, phi = 0 on the
/// boundary }.
struct ObstacleProblem {
    ScalarField f;        // nonnegative source
    ScalarField obstacle; // upper bound v >= 0
    TruncationParams params;

    ObstacleProblem(ScalarField f_, ScalarField obstacle_, TruncationParams params_);
};

struct ObstacleResult {
    ScalarField w;
    double energy = 0.0;
    double kkt_lower = 0.0;    // worst violation of grad >= 0 at w = 0
    double kkt_upper = 0.0;    // worst violation of grad <= 0 at w = obstacle
    double kkt_interior = 0.0; // worst |grad| at strictly interior nodes
    int iterations = 0;
};

/// Projected gradient descent (spectral steps, backtracking projected line
/// search). The energy is convex, so the minimizer is unique; convergence is
/// declared when the sup-norm of the projected gradient drops to tol. A node
/// counts as active when within 1e-10 of its bound. start (projected onto the
/// feasible box) defaults to the obstacle itself. Throws SolveError with the
/// gradient-norm history when max_iters is exhausted.
ObstacleResult minimize_obstacle(const ObstacleProblem& problem, double tol = 1e-10,
                                 int max_iters = 200000,
                                 const std::optional<ScalarField>& start = {});

/// Discrete variational-inequality pairing
///   <S w, psi> + integral of f * slope(w) * psi
/// for a nonnegative zero-boundary test field psi. The obstacle minimizer
/// satisfies this >= 0 for every such psi.
double variational_residual(const ScalarField& w, const ScalarField& psi, const ScalarField& f,
                            const TruncationParams& p);

/// Comparison certificate for a subsolution u against a supersolution v:
/// with w the obstacle minimizer below v and s = truncate_odd((u-w-eps)^+, tau),
/// computes the Dirichlet energy of s and the pairing
///   integral of f * (-slope(u) + slope(w)) * s.
/// The comparison chain predicts gradient_term <= source_term <= 0 up to
/// tolerance, which forces (u - w - eps)^+ ~ 0. Requires eps^(-beta) < level.
struct ComparisonCertificate {
    double gradient_term = 0.0;
    double source_term = 0.0;
    double max_excess = 0.0; // max over nodes of u - w - eps
    double eps = 0.0;
    double tau = 0.0;
    ObstacleResult minimizer;
};

ComparisonCertificate comparison_certificate(const ScalarField& u, const ScalarField& v,
                                             const ScalarField& f, const TruncationParams& p,
                                             double eps, double tau,
                                             double minimize_tol = 1e-10,
                                             int minimize_max_iters = 400000);

} // namespace sesolv
