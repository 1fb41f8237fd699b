// SPDX-License-Identifier: Apache-2.0
//
// sesolv: command-line driver for the singular elliptic solver. Subcommands:
//   solve     continuation solve, writes field.csv + solve_report.json
//   obstacle  solve, then minimize the truncated obstacle energy below it
//   verify    run the verification roster, write per-case JSON + summary.csv
//   sweep     cartesian (beta, m, rho) sweep with a summary CSV

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "config.hpp"
#include "runner.hpp"
#include "sesolv/errors.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"singular semilinear elliptic solver and verification harness"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::vector<std::string> overrides;

    for (const std::string name : {"solve", "obstacle", "verify", "sweep"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "flat key = value configuration file");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--override", overrides, "key=value overriding the config file")
            ->take_all();
    }

    CLI11_PARSE(app, argc, argv);

    try {
        const std::string subcommand = app.get_subcommands().front()->get_name();
        const sesolv::cli::RunConfig config =
            sesolv::cli::parse_config(config_path, overrides, subcommand, out_dir);
        return sesolv::cli::run(config);
    } catch (const sesolv::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return sesolv::cli::kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return sesolv::cli::kExitSolverError;
    }
}
