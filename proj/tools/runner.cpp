// SPDX-License-Identifier: Apache-2.0
#include "runner.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "sesolv/errors.hpp"
#include "sesolv/expression.hpp"
#include "sesolv/io.hpp"
#include "sesolv/solver.hpp"
#include "sesolv/variational.hpp"
#include "sesolv/verify.hpp"

namespace sesolv::cli {

namespace {

namespace fs = std::filesystem;

enum class LogLevel { Debug, Info, Quiet };

LogLevel log_level_from_env()
{
    const char* env = std::getenv("SE_LOG");
    if (!env) return LogLevel::Info;
    const std::string v = env;
    if (v == "debug") return LogLevel::Debug;
    if (v == "quiet") return LogLevel::Quiet;
    return LogLevel::Info;
}

/// Mirrors messages to stdout (per SE_LOG) and to <out>/run.log. The log file
/// carries no timestamps so reruns reproduce it byte for byte.
class Logger {
public:
    explicit Logger(const fs::path& out_dir)
        : level_(log_level_from_env()), file_(out_dir / "run.log")
    {
    }

    void info(const std::string& msg)
    {
        file_ << msg << '\n';
        if (level_ != LogLevel::Quiet) std::cout << msg << '\n';
    }

    void debug(const std::string& msg)
    {
        file_ << msg << '\n';
        if (level_ == LogLevel::Debug) std::cout << msg << '\n';
    }

private:
    LogLevel level_;
    std::ofstream file_;
};

ContinuationSchedule schedule_from(const RunConfig& c)
{
    ContinuationSchedule s;
    s.n0 = c.n0;
    s.growth = c.rho;
    s.n_max = c.n_max;
    s.interior_tol = c.interior_tol;
    s.margin = c.margin;
    s.newton_tol = c.newton_tol;
    s.max_newton_iters = c.newton_max_iters;
    s.damping = c.damping;
    return s;
}

ScalarField load_source(const RunConfig& c, const std::shared_ptr<const Grid>& grid)
{
    if (c.f.rfind("csv:", 0) == 0) {
        const ScalarField raw = read_field_csv(grid, c.f.substr(4));
        return source_from_values(grid, {raw.values().begin(), raw.values().end()});
    }
    return sample_source(grid, Expression::parse(c.f).bind(grid->domain()));
}

std::string solve_summary(const SolveReport& report)
{
    std::ostringstream os;
    os << "continuation " << (report.converged ? "converged" : "failed") << " after "
       << report.steps.size() << " steps";
    if (!report.steps.empty())
        os << " (final n = " << report.steps.back().n
           << ", interior change = " << format_double(report.steps.back().interior_change) << ")";
    os << "; interior min " << format_double(report.interior_min)
       << (report.positive ? " (positive)" : " (not positive)");
    return os.str();
}

int run_solve(const RunConfig& c, Logger& log)
{
    const Domain domain = domain_from_config(c);
    const auto grid = build_grid(domain, c.m);
    const Problem problem(grid, c.beta, load_source(c, grid));
    log.info("solve: " + describe(domain) + ", beta = " + format_double(c.beta) +
             ", m = " + std::to_string(c.m));

    const SolveReport report = solve_singular(problem, schedule_from(c));
    for (const ContinuationStep& s : report.steps)
        log.debug("  n = " + format_double(s.n) + "  change = " + format_double(s.interior_change) +
                  "  newton = " + std::to_string(s.newton_iterations));

    write_field_csv(report.u, fs::path(c.out) / "field.csv");
    write_text_file(fs::path(c.out) / "solve_report.json", solve_report_json(report));
    log.info("solve: " + solve_summary(report));
    log.info("solve: wrote field.csv and solve_report.json");
    return kExitOk;
}

int run_obstacle(const RunConfig& c, Logger& log)
{
    const Domain domain = domain_from_config(c);
    const auto grid = build_grid(domain, c.m);
    const Problem problem(grid, c.beta, load_source(c, grid));
    log.info("obstacle: solving the singular problem for the obstacle field");
    const SolveReport solve = solve_singular(problem, schedule_from(c));

    const TruncationParams params(c.k, c.beta);
    const ObstacleProblem obstacle(problem.f, solve.u, params);
    const ObstacleResult result = minimize_obstacle(obstacle, c.obstacle_tol, c.obstacle_max_iters);

    write_field_csv(solve.u, fs::path(c.out) / "field.csv");
    write_field_csv(result.w, fs::path(c.out) / "obstacle_w.csv");
    write_text_file(fs::path(c.out) / "obstacle_report.json", obstacle_result_json(result));
    log.info("obstacle: energy " + format_double(result.energy) + " after " +
             std::to_string(result.iterations) + " iterations; kkt = (" +
             format_double(result.kkt_lower) + ", " + format_double(result.kkt_upper) + ", " +
             format_double(result.kkt_interior) + ")");
    return kExitOk;
}

Axis axis_from(const RunConfig& c)
{
    return c.axis == "y" ? Axis::Y : Axis::X;
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream is(text);
    std::string cell;
    while (std::getline(is, cell, ','))
        if (!cell.empty()) out.push_back(cell);
    return out;
}

int run_verify(const RunConfig& c, Logger& log)
{
    const Domain domain = domain_from_config(c);
    const auto grid = build_grid(domain, c.m);
    const ScalarField f = load_source(c, grid);
    const ContinuationSchedule schedule = schedule_from(c);

    // Checks that compare solutions across problems need the continuation
    // driven further than the default interior tolerance.
    ContinuationSchedule tight = schedule;
    tight.interior_tol = std::min(schedule.interior_tol, 1e-10);

    std::vector<VerificationReport> reports;
    auto guarded = [&](const std::string& case_id, auto&& body) {
        try {
            reports.push_back(body());
        } catch (const Error& e) {
            VerificationReport failed;
            failed.case_id = case_id;
            failed.notes["error"] = e.what();
            failed.require_at_most("completed_without_error", 1.0, 0.0);
            reports.push_back(std::move(failed));
        }
        log.info("verify: " + reports.back().case_id +
                 (reports.back().passed() ? " PASS" : " FAIL"));
    };

    for (const std::string& name : split_list(c.cases)) {
        if (name == "uniqueness") {
            guarded("uniqueness", [&] {
                const Problem problem(grid, c.beta, f);
                ContinuationSchedule fast = schedule, slow = schedule;
                slow.growth = 2.0 * schedule.growth;
                return uniqueness_check(problem, default_uniqueness_inits(problem), {fast, slow},
                                        c.uniqueness_tol);
            });
        } else if (name == "comparison") {
            std::vector<SourcePair> pairs;
            try {
                pairs = seeded_trig_source_pairs(grid, c.pairs, c.seed);
            } catch (const Error& e) {
                VerificationReport failed;
                failed.case_id = "comparison";
                failed.notes["error"] = e.what();
                failed.require_at_most("completed_without_error", 1.0, 0.0);
                reports.push_back(std::move(failed));
                continue;
            }
            for (const SourcePair& pair : pairs) {
                guarded("comparison_seed" + std::to_string(pair.seed), [&] {
                    CertificateConfig cert;
                    cert.eps = c.eps;
                    cert.level = c.k;
                    cert.tau = c.tau;
                    cert.gradient_tol = c.certificate_tol;
                    return comparison_check(Problem(grid, c.beta, pair.lower),
                                            Problem(grid, c.beta, pair.upper), c.comparison_tol,
                                            cert, tight,
                                            "comparison_seed" + std::to_string(pair.seed));
                });
            }
        } else if (name == "symmetry") {
            guarded("symmetry", [&] {
                return symmetry_check(Problem(grid, c.beta, f), axis_from(c), c.symmetry_tol,
                                      schedule);
            });
        } else if (name == "scaling") {
            guarded("scaling", [&] {
                ContinuationSchedule s = schedule;
                s.interior_tol = std::min(schedule.interior_tol, 1e-9);
                return scaling_check(Problem(grid, c.beta, f), c.lambda, c.scaling_tol, s);
            });
        } else if (name == "boundary") {
            guarded("boundary_exponent", [&] {
                return boundary_exponent_check(Problem(grid, c.beta, f), c.boundary_rel_tol,
                                               c.window_lo, c.window_hi, schedule);
            });
        } else if (name == "energy") {
            guarded("energy_classes", [&] {
                if (c.f.rfind("csv:", 0) == 0)
                    throw InvalidArgumentError(
                        "the energy ladder re-solves at several resolutions and needs an "
                        "expression source, not gridded data");
                // Canonical refinement ladder; the asymptotic bounds only
                // hold once the boundary layer is resolved.
                const std::vector<int> ladder = {65, 129, 257, 513};
                const SourceFn fn = Expression::parse(c.f).bind(domain);
                return energy_class_diagnostic(domain, c.beta, fn, ladder, schedule,
                                               c.energy_ratio_bound, c.energy_growth_min);
            });
        } else {
            throw ConfigError("unknown verification case '" + name + "'");
        }
    }

    bool all_pass = true;
    for (const VerificationReport& report : reports) {
        write_text_file(fs::path(c.out) / ("verify_" + report.case_id + ".json"),
                        verification_report_json(report));
        all_pass = all_pass && report.passed();
    }
    write_text_file(fs::path(c.out) / "summary.csv", verification_summary_csv(reports));
    log.info(std::string("verify: ") + (all_pass ? "all cases passed" : "some cases FAILED") +
             "; wrote summary.csv");
    return all_pass ? kExitOk : kExitVerificationFailed;
}

struct SweepRow {
    double beta = 0.0;
    int m = 0;
    double rho = 0.0;
    std::string status = "ok";
    std::string message;
    int steps = 0;
    int newton_total = 0;
    double interior_min = 0.0;
    double h1_energy = 0.0;
    double uq_energy = 0.0;
    double wall_ms = 0.0;
};

int run_sweep(const RunConfig& c, Logger& log)
{
    const Domain domain = domain_from_config(c);
    const std::vector<double> betas =
        c.sweep_beta.empty() ? std::vector<double>{c.beta} : parse_double_list(c.sweep_beta, "sweep_beta");
    const std::vector<int> ms =
        c.sweep_m.empty() ? std::vector<int>{c.m} : parse_int_list(c.sweep_m, "sweep_m");
    const std::vector<double> rhos =
        c.sweep_rho.empty() ? std::vector<double>{c.rho} : parse_double_list(c.sweep_rho, "sweep_rho");

    struct Cell {
        double beta;
        int m;
        double rho;
    };
    std::vector<Cell> cells;
    for (double beta : betas)
        for (int m : ms)
            for (double rho : rhos) cells.push_back({beta, m, rho});
    if (cells.empty()) throw ConfigError("sweep produced no cells");
    log.info("sweep: " + std::to_string(cells.size()) + " cells, " +
             std::to_string(std::min<std::size_t>(c.workers, cells.size())) + " workers");

    std::vector<SweepRow> rows(cells.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            const Cell& cell = cells[i];
            SweepRow row;
            row.beta = cell.beta;
            row.m = cell.m;
            row.rho = cell.rho;
            const auto t0 = std::chrono::steady_clock::now();
            try {
                const auto grid = build_grid(domain, cell.m);
                const Problem problem(grid, cell.beta,
                                      sample_source(grid, Expression::parse(c.f).bind(domain)));
                ContinuationSchedule schedule = schedule_from(c);
                schedule.growth = cell.rho;
                const SolveReport report = solve_singular(problem, schedule);
                row.steps = static_cast<int>(report.steps.size());
                for (const ContinuationStep& s : report.steps)
                    row.newton_total += s.newton_iterations;
                row.interior_min = report.interior_min;
                row.h1_energy = h1_seminorm_sq(report.u, 0.0);
                const double q = std::max(1.0, 0.5 * (cell.beta + 1.0));
                row.uq_energy = h1_seminorm_sq(power_field(report.u, q), 0.0);
            } catch (const std::exception& e) {
                row.status = "error";
                row.message = e.what();
                for (char& ch : row.message)
                    if (ch == ',' || ch == '\n') ch = ';';
            }
            row.wall_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
            rows[i] = std::move(row);
        }
    };
    {
        std::vector<std::thread> pool;
        const std::size_t nworkers = std::min<std::size_t>(c.workers, cells.size());
        pool.reserve(nworkers);
        for (std::size_t t = 0; t < nworkers; ++t) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }

    std::ostringstream csv;
    csv << "beta,m,rho,status,steps,newton_iterations,interior_min,h1_energy,uq_energy,wall_ms,"
           "message\n";
    bool any_error = false;
    for (const SweepRow& row : rows) {
        any_error = any_error || row.status != "ok";
        csv << format_double(row.beta) << ',' << row.m << ',' << format_double(row.rho) << ','
            << row.status << ',' << row.steps << ',' << row.newton_total << ','
            << format_double(row.interior_min) << ',' << format_double(row.h1_energy) << ','
            << format_double(row.uq_energy) << ',' << format_double(row.wall_ms) << ','
            << row.message << '\n';
    }
    write_text_file(fs::path(c.out) / "sweep.csv", csv.str());
    log.info(std::string("sweep: wrote sweep.csv") + (any_error ? " (with error rows)" : ""));
    return any_error ? kExitVerificationFailed : kExitOk;
}

} // namespace

int run(const RunConfig& config)
{
    try {
        fs::create_directories(config.out);
        Logger log{fs::path(config.out)};
        write_text_file(fs::path(config.out) / "config.resolved", serialize_config(config));

        if (config.subcommand == "solve") return run_solve(config, log);
        if (config.subcommand == "obstacle") return run_obstacle(config, log);
        if (config.subcommand == "verify") return run_verify(config, log);
        if (config.subcommand == "sweep") return run_sweep(config, log);
        throw ConfigError("unknown subcommand '" + config.subcommand + "'");
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const InvalidArgumentError& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kExitSolverError;
    }
}

} // namespace sesolv::cli
