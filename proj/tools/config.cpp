// SPDX-License-Identifier: Apache-2.0
#include "config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "sesolv/errors.hpp"
#include "sesolv/expression.hpp"
#include "sesolv/io.hpp"

namespace sesolv::cli {

namespace {

std::string trim(const std::string& s)
{
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& value, const std::string& key, int line)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "' expects a number, got '" + value + "'", line);
    }
}

int parse_int(const std::string& value, const std::string& key, int line)
{
    try {
        std::size_t used = 0;
        const int v = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "' expects an integer, got '" + value + "'", line);
    }
}

std::uint64_t parse_u64(const std::string& value, const std::string& key, int line)
{
    try {
        std::size_t used = 0;
        const std::uint64_t v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "' expects an unsigned integer, got '" + value + "'",
                          line);
    }
}

using Setter = std::function<void(RunConfig&, const std::string&, int line)>;

const std::map<std::string, Setter>& setters()
{
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> t;
        auto str = [&t](const std::string& key, std::string RunConfig::* field) {
            t[key] = [field](RunConfig& c, const std::string& v, int) { c.*field = v; };
        };
        auto num = [&t](const std::string& key, double RunConfig::* field) {
            t[key] = [field, key](RunConfig& c, const std::string& v, int line) {
                c.*field = parse_double(v, key, line);
            };
        };
        auto integer = [&t](const std::string& key, int RunConfig::* field) {
            t[key] = [field, key](RunConfig& c, const std::string& v, int line) {
                c.*field = parse_int(v, key, line);
            };
        };
        str("subcommand", &RunConfig::subcommand);
        str("domain", &RunConfig::domain);
        num("xmin", &RunConfig::xmin);
        num("xmax", &RunConfig::xmax);
        num("ymin", &RunConfig::ymin);
        num("ymax", &RunConfig::ymax);
        integer("dim", &RunConfig::dim);
        num("radius", &RunConfig::radius);
        num("rmin", &RunConfig::rmin);
        num("rmax", &RunConfig::rmax);
        num("beta", &RunConfig::beta);
        str("f", &RunConfig::f);
        integer("m", &RunConfig::m);
        num("n0", &RunConfig::n0);
        num("rho", &RunConfig::rho);
        num("n_max", &RunConfig::n_max);
        num("interior_tol", &RunConfig::interior_tol);
        num("margin", &RunConfig::margin);
        num("newton_tol", &RunConfig::newton_tol);
        integer("newton_max_iters", &RunConfig::newton_max_iters);
        num("damping", &RunConfig::damping);
        num("k", &RunConfig::k);
        num("obstacle_tol", &RunConfig::obstacle_tol);
        integer("obstacle_max_iters", &RunConfig::obstacle_max_iters);
        num("eps", &RunConfig::eps);
        num("tau", &RunConfig::tau);
        str("cases", &RunConfig::cases);
        integer("pairs", &RunConfig::pairs);
        t["seed"] = [](RunConfig& c, const std::string& v, int line) {
            c.seed = parse_u64(v, "seed", line);
        };
        str("axis", &RunConfig::axis);
        num("lambda", &RunConfig::lambda);
        num("uniqueness_tol", &RunConfig::uniqueness_tol);
        num("comparison_tol", &RunConfig::comparison_tol);
        num("symmetry_tol", &RunConfig::symmetry_tol);
        num("scaling_tol", &RunConfig::scaling_tol);
        num("boundary_rel_tol", &RunConfig::boundary_rel_tol);
        num("energy_ratio_bound", &RunConfig::energy_ratio_bound);
        num("energy_growth_min", &RunConfig::energy_growth_min);
        num("certificate_tol", &RunConfig::certificate_tol);
        integer("window_lo", &RunConfig::window_lo);
        integer("window_hi", &RunConfig::window_hi);
        str("sweep_beta", &RunConfig::sweep_beta);
        str("sweep_m", &RunConfig::sweep_m);
        str("sweep_rho", &RunConfig::sweep_rho);
        integer("workers", &RunConfig::workers);
        str("out", &RunConfig::out);
        return t;
    }();
    return table;
}

void apply_key(RunConfig& config, const std::string& key, const std::string& value, int line)
{
    const auto it = setters().find(key);
    if (it == setters().end())
        throw ConfigError("unknown key '" + key + "'", line);
    it->second(config, value, line);
}

} // namespace

RunConfig parse_config(const std::string& path, const std::vector<std::string>& overrides,
                       const std::string& cli_subcommand, const std::string& cli_out)
{
    RunConfig config;
    bool file_has_subcommand = false;
    bool file_has_out = false;

    if (!path.empty()) {
        std::ifstream is(path);
        if (!is) throw ConfigError("cannot open config file '" + path + "'");
        std::string line;
        int lineno = 0;
        std::map<std::string, int> seen;
        while (std::getline(is, line)) {
            ++lineno;
            if (const auto hash = line.find('#'); hash != std::string::npos)
                line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("expected 'key = value', got '" + line + "'", lineno);
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty()) throw ConfigError("missing key before '='", lineno);
            if (const auto [it, fresh] = seen.emplace(key, lineno); !fresh)
                throw ConfigError("duplicate key '" + key + "' (first on line " +
                                      std::to_string(it->second) + ")",
                                  lineno);
            apply_key(config, key, value, lineno);
            if (key == "subcommand") file_has_subcommand = true;
            if (key == "out") file_has_out = true;
        }
    }

    std::map<std::string, std::string> override_values;
    for (const std::string& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw ConfigError("override '" + ov + "' must look like key=value");
        const std::string key = trim(ov.substr(0, eq));
        const std::string value = trim(ov.substr(eq + 1));
        if (const auto it = override_values.find(key);
            it != override_values.end() && it->second != value)
            throw ConfigError("conflicting overrides for '" + key + "': '" + it->second +
                              "' vs '" + value + "'");
        override_values[key] = value;
        apply_key(config, key, value, -1);
    }

    if (!cli_subcommand.empty()) {
        if (file_has_subcommand && config.subcommand != cli_subcommand &&
            !override_values.count("subcommand"))
            throw ConfigError("config file sets subcommand '" + config.subcommand +
                              "' but the command line asks for '" + cli_subcommand + "'");
        config.subcommand = cli_subcommand;
    }
    if (!cli_out.empty()) {
        if (file_has_out && config.out != cli_out && !override_values.count("out"))
            throw ConfigError("config file sets out '" + config.out +
                              "' but the command line asks for '" + cli_out + "'");
        config.out = cli_out;
    }

    validate_config(config);
    return config;
}

void validate_config(const RunConfig& config)
{
    static const std::vector<std::string> subcommands = {"solve", "obstacle", "verify", "sweep"};
    if (std::find(subcommands.begin(), subcommands.end(), config.subcommand) == subcommands.end())
        throw ConfigError("unknown subcommand '" + config.subcommand + "'");
    if (!(config.beta > 0.0)) throw ConfigError("beta must be positive");
    if (config.m < 3) throw ConfigError("m must be at least 3");
    if (!(config.rho > 1.0)) throw ConfigError("rho must exceed 1");
    if (!(config.n0 >= 1.0)) throw ConfigError("n0 must be >= 1");
    if (!(config.interior_tol > 0.0)) throw ConfigError("interior_tol must be positive");
    if (config.axis != "x" && config.axis != "y") throw ConfigError("axis must be x or y");
    if (config.workers < 1) throw ConfigError("workers must be >= 1");

    domain_from_config(config); // validates domain block

    if (config.f.rfind("csv:", 0) == 0) {
        const std::string file = config.f.substr(4);
        if (!std::filesystem::exists(file))
            throw ConfigError("source CSV '" + file + "' does not exist");
    } else {
        Expression::parse(config.f).bind(domain_from_config(config));
    }

    if (!config.sweep_beta.empty()) parse_double_list(config.sweep_beta, "sweep_beta");
    if (!config.sweep_m.empty()) parse_int_list(config.sweep_m, "sweep_m");
    if (!config.sweep_rho.empty()) parse_double_list(config.sweep_rho, "sweep_rho");
}

Domain domain_from_config(const RunConfig& config)
{
    Domain domain;
    if (config.domain == "interval")
        domain = Interval{config.xmin, config.xmax};
    else if (config.domain == "rectangle")
        domain = Rectangle{config.xmin, config.xmax, config.ymin, config.ymax};
    else if (config.domain == "ball")
        domain = RadialBall{config.dim, config.radius};
    else if (config.domain == "annulus")
        domain = RadialAnnulus{config.dim, config.rmin, config.rmax};
    else
        throw ConfigError("unknown domain '" + config.domain +
                          "' (interval, rectangle, ball, annulus)");
    try {
        validate(domain);
    } catch (const InvalidArgumentError& e) {
        throw ConfigError(e.what());
    }
    return domain;
}

std::string serialize_config(const RunConfig& c)
{
    std::ostringstream os;
    auto put = [&os](const std::string& key, const std::string& value) {
        os << key << " = " << value << '\n';
    };
    auto num = [&put](const std::string& key, double v) { put(key, format_double(v)); };
    put("subcommand", c.subcommand);
    put("domain", c.domain);
    num("xmin", c.xmin);
    num("xmax", c.xmax);
    num("ymin", c.ymin);
    num("ymax", c.ymax);
    put("dim", std::to_string(c.dim));
    num("radius", c.radius);
    num("rmin", c.rmin);
    num("rmax", c.rmax);
    num("beta", c.beta);
    put("f", c.f);
    put("m", std::to_string(c.m));
    num("n0", c.n0);
    num("rho", c.rho);
    num("n_max", c.n_max);
    num("interior_tol", c.interior_tol);
    num("margin", c.margin);
    num("newton_tol", c.newton_tol);
    put("newton_max_iters", std::to_string(c.newton_max_iters));
    num("damping", c.damping);
    num("k", c.k);
    num("obstacle_tol", c.obstacle_tol);
    put("obstacle_max_iters", std::to_string(c.obstacle_max_iters));
    num("eps", c.eps);
    num("tau", c.tau);
    put("cases", c.cases);
    put("pairs", std::to_string(c.pairs));
    put("seed", std::to_string(c.seed));
    put("axis", c.axis);
    num("lambda", c.lambda);
    num("uniqueness_tol", c.uniqueness_tol);
    num("comparison_tol", c.comparison_tol);
    num("symmetry_tol", c.symmetry_tol);
    num("scaling_tol", c.scaling_tol);
    num("boundary_rel_tol", c.boundary_rel_tol);
    num("energy_ratio_bound", c.energy_ratio_bound);
    num("energy_growth_min", c.energy_growth_min);
    num("certificate_tol", c.certificate_tol);
    put("window_lo", std::to_string(c.window_lo));
    put("window_hi", std::to_string(c.window_hi));
    put("sweep_beta", c.sweep_beta);
    put("sweep_m", c.sweep_m);
    put("sweep_rho", c.sweep_rho);
    put("workers", std::to_string(c.workers));
    put("out", c.out);
    return os.str();
}

std::vector<double> parse_double_list(const std::string& text, const std::string& key)
{
    std::vector<double> out;
    std::istringstream is(text);
    std::string cell;
    while (std::getline(is, cell, ',')) {
        cell = trim(cell);
        if (cell.empty()) throw ConfigError("empty entry in list '" + key + "'");
        out.push_back(parse_double(cell, key, -1));
    }
    if (out.empty()) throw ConfigError("list '" + key + "' is empty");
    return out;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& key)
{
    std::vector<int> out;
    std::istringstream is(text);
    std::string cell;
    while (std::getline(is, cell, ',')) {
        cell = trim(cell);
        if (cell.empty()) throw ConfigError("empty entry in list '" + key + "'");
        out.push_back(parse_int(cell, key, -1));
    }
    if (out.empty()) throw ConfigError("list '" + key + "' is empty");
    return out;
}

} // namespace sesolv::cli
