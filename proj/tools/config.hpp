// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sesolv/domain.hpp"

namespace sesolv::cli {

/// Fully resolved run configuration. The on-disk format is flat
/// `key = value` text with `#` comments; unknown keys are rejected and the
/// resolved config serializes back to the same format (round-trippable).
struct RunConfig {
    std::string subcommand = "solve"; // solve | obstacle | verify | sweep

    // Domain
    std::string domain = "interval"; // interval | rectangle | ball | annulus
    double xmin = 0.0, xmax = 1.0;
    double ymin = 0.0, ymax = 1.0;
    int dim = 2;
    double radius = 1.0;
    double rmin = 0.5, rmax = 1.0;

    // Equation
    double beta = 2.0;
    std::string f = "1"; // expression over x[,y]/r, or csv:PATH
    int m = 129;

    // Continuation schedule
    double n0 = 1.0;
    double rho = 2.0;
    double n_max = 1099511627776.0; // 2^40
    double interior_tol = 1e-8;
    double margin = -1.0; // <0: width/16
    double newton_tol = 1e-11;
    int newton_max_iters = 100;
    double damping = 0.5;

    // Obstacle / certificate machinery
    double k = 1e4;
    double obstacle_tol = 1e-10;
    int obstacle_max_iters = 400000;
    double eps = 0.05;
    double tau = 1.0;

    // Verification roster
    std::string cases = "uniqueness,comparison,symmetry,scaling,energy";
    int pairs = 5;
    std::uint64_t seed = 1234;
    std::string axis = "x";
    double lambda = 3.0;
    double uniqueness_tol = 1e-6;
    double comparison_tol = 1e-9;
    double symmetry_tol = 1e-10;
    double scaling_tol = 1e-7;
    double boundary_rel_tol = 0.05;
    double energy_ratio_bound = 1.25;
    double energy_growth_min = 0.05;
    double certificate_tol = 1e-8;
    int window_lo = 2;
    int window_hi = 32;

    // Sweep
    std::string sweep_beta; // comma lists; empty = the scalar value above
    std::string sweep_m;
    std::string sweep_rho;
    int workers = 4;

    std::string out = "sesolv_out";
};

/// Parses the file (empty path = defaults), then applies `key=value`
/// overrides. cli_subcommand / cli_out come from the command line; a
/// conflicting value in the file raises ConfigError.
RunConfig parse_config(const std::string& path, const std::vector<std::string>& overrides,
                       const std::string& cli_subcommand = "", const std::string& cli_out = "");

/// Canonical flat serialization of the resolved config (all keys, fixed
/// order, 17-significant-digit numbers).
std::string serialize_config(const RunConfig& config);

/// Semantic validation (beta > 0, m >= 3, referenced files exist, ...).
void validate_config(const RunConfig& config);

Domain domain_from_config(const RunConfig& config);

std::vector<double> parse_double_list(const std::string& text, const std::string& key);
std::vector<int> parse_int_list(const std::string& text, const std::string& key);

} // namespace sesolv::cli
