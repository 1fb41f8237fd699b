// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sesolv {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A precondition on an argument was violated (bad resolution, bad margin,
/// ordering violations, threshold violations, ...).
class InvalidArgumentError : public Error {
public:
    using Error::Error;
};

/// Two objects that must live on the same grid / axis / shape do not.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Sampled or loaded data is unusable (non-finite, negative source, ...).
class DataError : public Error {
public:
    using Error::Error;
};

/// A linear, Newton, continuation, or minimization loop failed to converge.
/// Carries the residual history of the failed run.
class SolveError : public Error {
public:
    SolveError(const std::string& what, std::vector<double> residual_history = {})
        : Error(what), residual_history_(std::move(residual_history)) {}

    const std::vector<double>& residual_history() const { return residual_history_; }

private:
    std::vector<double> residual_history_;
};

/// Configuration file / flag problems. line() is 1-based, or -1 when the
/// error is not tied to a specific line.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what, int line = -1)
        : Error(line >= 0 ? what + " (line " + std::to_string(line) + ")" : what),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_ = -1;
};

} // namespace sesolv
