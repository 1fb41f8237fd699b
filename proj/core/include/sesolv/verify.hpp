// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sesolv/solver.hpp"
#include "sesolv/variational.hpp"

namespace sesolv {

/// One measured quantity against its tolerance. pass means value <= tolerance
/// unless at_least is set (then value >= tolerance).
struct CheckRow {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool at_least = false;
    bool pass = false;
};

struct VerificationReport {
    std::string case_id;
    std::vector<CheckRow> checks;
    std::map<std::string, double> details;
    std::map<std::string, std::string> notes;

    CheckRow& require_at_most(const std::string& name, double value, double tolerance);
    CheckRow& require_at_least(const std::string& name, double value, double tolerance);
    bool passed() const;
};

/// Solves the problem from every (init, schedule) combination and reports the
/// maximum pairwise sup-difference on the margin-interior region. At least
/// two combinations are required.
VerificationReport uniqueness_check(const Problem& problem, const std::vector<ScalarField>& inits,
                                    const std::vector<ContinuationSchedule>& schedules, double tol,
                                    const std::string& case_id = "uniqueness");

/// The two standard initial guesses: the clipped linear solve and the
/// constant half its maximum (zero on the boundary).
std::vector<ScalarField> default_uniqueness_inits(const Problem& problem);

struct CertificateConfig {
    double eps = 0.05;
    double level = 1e4; // truncation level k; requires eps^-beta < level
    double tau = 1.0;
    double gradient_tol = 1e-8;
};

/// Tight schedule used by checks that compare solutions across problems.
ContinuationSchedule comparison_schedule();

/// Requires lower.f <= upper.f pointwise and a common beta > 1. Solves both
/// problems, asserts the solution ordering up to tol at every node, and runs
/// the comparison certificate of the lower solution against the upper one.
VerificationReport comparison_check(const Problem& lower, const Problem& upper, double tol = 1e-9,
                                    const CertificateConfig& cert = {},
                                    const ContinuationSchedule& schedule = comparison_schedule(),
                                    const std::string& case_id = "comparison");

/// Requires f symmetric about the axis midplane (to 1e-13). Reports
/// |u - reflect(u)|_inf. Radial domains are symmetric by representation and
/// report a zero discrepancy.
VerificationReport symmetry_check(const Problem& problem, Axis axis, double tol = 1e-10,
                                  const ContinuationSchedule& schedule = {},
                                  const std::string& case_id = "symmetry");

/// Compares solve(lambda^(1+beta) f) against lambda * solve(f) in sup norm:
/// an exact identity of the equation, so the discrepancy only measures solver
/// stopping error.
VerificationReport scaling_check(const Problem& problem, double lambda, double tol = 1e-7,
                                 const ContinuationSchedule& schedule = comparison_schedule(),
                                 const std::string& case_id = "scaling");

/// Least-squares fit of log u against log dist over the near-boundary node
/// window [window_lo * h, window_hi * h] on both ends of an interval domain.
struct BoundaryFit {
    double alpha_hat = 0.0;  // fitted boundary exponent
    double q = 0.0;          // max(1, (beta+1)/2)
    double deviation = 0.0;  // |alpha_hat * q - 1|
    double intercept = 0.0;
    int points = 0;
};

BoundaryFit boundary_exponent(const Problem& problem, int window_lo = 2, int window_hi = 32,
                              const ContinuationSchedule& schedule = {});

/// Wraps boundary_exponent: alpha_hat within rel_tol of 2/(1+beta), and
/// |alpha_hat * q - 1| <= rel_tol.
VerificationReport boundary_exponent_check(const Problem& problem, double rel_tol = 0.05,
                                           int window_lo = 2, int window_hi = 32,
                                           const ContinuationSchedule& schedule = {},
                                           const std::string& case_id = "boundary_exponent");

/// Re-solves over a ladder of resolutions and inspects the Dirichlet energies
/// of u and of u^q, q = max(1, (beta+1)/2). The u^q energies must stay
/// bounded (max/min <= ratio_bound); for beta >= 3 the raw energies must grow
/// by at least growth_min per halving, for beta < 3 they must stay bounded.
VerificationReport energy_class_diagnostic(const Domain& domain, double beta, const SourceFn& f,
                                           std::span<const int> resolutions,
                                           const ContinuationSchedule& schedule = {},
                                           double ratio_bound = 1.25, double growth_min = 0.05,
                                           const std::string& case_id = "energy_classes");

/// Seeded family of ordered nonnegative trigonometric-polynomial sources:
/// lower = P1(x)^2, upper = lower + P2(x)^2 with coefficients drawn from a
/// deterministic generator (seed recorded per pair).
struct SourcePair {
    ScalarField lower;
    ScalarField upper;
    std::uint64_t seed = 0;
};

std::vector<SourcePair> seeded_trig_source_pairs(const std::shared_ptr<const Grid>& grid,
                                                 int count, std::uint64_t base_seed);

/// f scaled by a constant factor (used by the scaling identity).
ScalarField scaled_field(const ScalarField& f, double factor);

} // namespace sesolv
