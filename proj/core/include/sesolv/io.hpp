// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "sesolv/field.hpp"
#include "sesolv/solver.hpp"
#include "sesolv/variational.hpp"
#include "sesolv/verify.hpp"

namespace sesolv {

/// Formats a double with 17 significant digits (full round trip).
std::string format_double(double v);

/// Field CSV: header "x,value" (1D/radial) or "x,y,value" (2D), one row per
/// node in row-major node order, 17 significant digits.
void write_field_csv(const ScalarField& field, std::ostream& os);
void write_field_csv(const ScalarField& field, const std::filesystem::path& path);

/// Reads a field CSV written by write_field_csv back onto the given grid.
/// Node count and coordinates must match (DataError otherwise).
ScalarField read_field_csv(const std::shared_ptr<const Grid>& grid,
                           const std::filesystem::path& path);

std::string solve_report_json(const SolveReport& report);
std::string obstacle_result_json(const ObstacleResult& result);
std::string verification_report_json(const VerificationReport& report);

/// Summary table: case_id, check, value, tolerance, sense, pass.
std::string verification_summary_csv(std::span<const VerificationReport> reports);

void write_text_file(const std::filesystem::path& path, const std::string& content);

} // namespace sesolv
