// SPDX-License-Identifier: Apache-2.0
#include "sesolv/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sesolv/errors.hpp"

namespace sesolv {

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_field_csv(const ScalarField& field, std::ostream& os)
{
    const Grid& g = field.grid();
    const bool two_d = g.axis_count() == 2;
    os << (two_d ? "x,y,value\n" : "x,value\n");
    for (int i = 0; i < field.size(); ++i) {
        const Point& p = g.node(i);
        os << format_double(p.x);
        if (two_d) os << ',' << format_double(p.y);
        os << ',' << format_double(field[i]) << '\n';
    }
}

void write_field_csv(const ScalarField& field, const std::filesystem::path& path)
{
    std::ofstream os(path);
    if (!os) throw DataError("cannot open '" + path.string() + "' for writing");
    write_field_csv(field, os);
}

ScalarField read_field_csv(const std::shared_ptr<const Grid>& grid,
                           const std::filesystem::path& path)
{
    std::ifstream is(path);
    if (!is) throw DataError("cannot open field CSV '" + path.string() + "'");

    const bool two_d = grid->axis_count() == 2;
    std::string line;
    if (!std::getline(is, line)) throw DataError("field CSV '" + path.string() + "' is empty");
    const std::string expected_header = two_d ? "x,y,value" : "x,value";
    if (line != expected_header)
        throw DataError("field CSV header '" + line + "' does not match '" + expected_header + "'");

    std::vector<double> values;
    values.reserve(grid->node_count());
    int row = 0;
    const double coord_tol = 1e-12 * (1.0 + width(grid->domain()));
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (row >= grid->node_count())
            throw DataError("field CSV has more rows than grid nodes");
        std::istringstream ls(line);
        std::string cell;
        double cols[3] = {0, 0, 0};
        const int ncols = two_d ? 3 : 2;
        for (int c = 0; c < ncols; ++c) {
            if (!std::getline(ls, cell, ','))
                throw DataError("field CSV row " + std::to_string(row + 2) + " is short");
            cols[c] = std::stod(cell);
        }
        const Point& p = grid->node(row);
        if (std::abs(cols[0] - p.x) > coord_tol || (two_d && std::abs(cols[1] - p.y) > coord_tol))
            throw DataError("field CSV row " + std::to_string(row + 2) +
                            " does not match the grid resolution");
        values.push_back(cols[ncols - 1]);
        ++row;
    }
    if (row != grid->node_count())
        throw DataError("field CSV has " + std::to_string(row) + " rows for " +
                        std::to_string(grid->node_count()) + " nodes");
    return {grid, std::move(values)};
}

std::string solve_report_json(const SolveReport& report)
{
    nlohmann::json j;
    j["converged"] = report.converged;
    j["positive"] = report.positive;
    j["interior_min"] = report.interior_min;
    j["margin"] = report.margin;
    j["weak_residual"] = report.weak_residual;
    nlohmann::json steps = nlohmann::json::array();
    for (const ContinuationStep& s : report.steps) {
        steps.push_back({{"n", s.n},
                         {"interior_change", s.interior_change},
                         {"newton_iterations", s.newton_iterations},
                         {"newton_residual", s.newton_residual}});
    }
    j["steps"] = std::move(steps);
    return j.dump(2) + "\n";
}

std::string obstacle_result_json(const ObstacleResult& result)
{
    nlohmann::json j;
    j["energy"] = result.energy;
    j["iterations"] = result.iterations;
    j["kkt"] = {{"lower", result.kkt_lower},
                {"upper", result.kkt_upper},
                {"interior", result.kkt_interior}};
    return j.dump(2) + "\n";
}

std::string verification_report_json(const VerificationReport& report)
{
    nlohmann::json j;
    j["case_id"] = report.case_id;
    j["pass"] = report.passed();
    nlohmann::json checks = nlohmann::json::array();
    for (const CheckRow& c : report.checks) {
        checks.push_back({{"name", c.name},
                          {"value", c.value},
                          {"tolerance", c.tolerance},
                          {"sense", c.at_least ? ">=" : "<="},
                          {"pass", c.pass}});
    }
    j["checks"] = std::move(checks);
    j["details"] = report.details;
    if (!report.notes.empty()) j["notes"] = report.notes;
    return j.dump(2) + "\n";
}

std::string verification_summary_csv(std::span<const VerificationReport> reports)
{
    std::ostringstream os;
    os << "case_id,check,value,tolerance,sense,pass\n";
    for (const VerificationReport& r : reports)
        for (const CheckRow& c : r.checks)
            os << r.case_id << ',' << c.name << ',' << format_double(c.value) << ','
               << format_double(c.tolerance) << ',' << (c.at_least ? ">=" : "<=") << ','
               << (c.pass ? "true" : "false") << '\n';
    return os.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream os(path);
    if (!os) throw DataError("cannot open '" + path.string() + "' for writing");
    os << content;
}

} // namespace sesolv
