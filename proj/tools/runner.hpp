// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "config.hpp"

namespace sesolv::cli {

/// Exit codes: 0 success/pass, 1 verification failure, 2 solver error,
/// 3 config error.
enum ExitCode : int {
    kExitOk = 0,
    kExitVerificationFailed = 1,
    kExitSolverError = 2,
    kExitConfigError = 3,
};

/// Executes the configured subcommand and writes CSV/JSON outputs plus a
/// run.log to the output directory. Never throws.
int run(const RunConfig& config);

} // namespace sesolv::cli
