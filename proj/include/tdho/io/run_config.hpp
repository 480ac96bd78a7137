#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tdho/ermakov.hpp"
#include "tdho/field.hpp"
#include "tdho/io/json.hpp"

namespace tdho::io {

enum class MethodChoice { automatic, direct, pinney, closed_form };

/// Everything a pipeline subcommand needs, parsed from one JSON document.
struct RunConfig {
    FrequencyProfile profile = profile::Constant{};
    OscillatorConstants constants;
    int n = 0;
    double t0 = 0.0;
    double t1 = 10.0;
    std::size_t samples = 101;
    std::optional<SpatialGrid> grid;
    std::size_t grid_count = 2048;
    MethodChoice method = MethodChoice::automatic;
    double tol = 1e-10;
    std::optional<RhoSample> initial;
    std::optional<std::string> output;

    std::vector<double> times() const
    {
        std::vector<double> out(samples);
        for (std::size_t k = 0; k < samples; ++k) {
            out[k] = k + 1 == samples ? t1 : t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(samples - 1);
        }
        return out;
    }
};

inline MethodChoice parse_method(const std::string& s)
{
    if (s == "auto") return MethodChoice::automatic;
    if (s == "direct") return MethodChoice::direct;
    if (s == "pinney") return MethodChoice::pinney;
    if (s == "closed_form") return MethodChoice::closed_form;
    throw ConfigError("unknown method '" + s + "' (expected auto, direct, pinney or closed_form)");
}

inline RunConfig run_config_from_json(const json& j)
{
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    RunConfig cfg;
    if (!j.contains("profile")) throw ConfigError("config needs a 'profile'");
    cfg.profile = profile_from_json(j.at("profile"));
    cfg.constants = constants_from_json(j.value("constants", json()), initial_omega(cfg.profile));

    if (j.contains("n")) {
        if (!j.at("n").is_number_integer() || j.at("n").get<long long>() < 0) {
            throw ConfigError("'n' must be a non-negative integer");
        }
        cfg.n = j.at("n").get<int>();
    }
    if (j.contains("time")) {
        const auto& tj = j.at("time");
        if (!tj.is_object()) throw ConfigError("'time' must be an object");
        cfg.t0 = detail::number_or(tj, "t0", 0.0);
        cfg.t1 = detail::number_or(tj, "t1", cfg.t1);
        if (tj.contains("samples")) {
            if (!tj.at("samples").is_number_integer()) throw ConfigError("'time.samples' must be an integer");
            const auto s = tj.at("samples").get<long long>();
            if (s < 2) throw ConfigError("'time.samples' must be >= 2");
            cfg.samples = static_cast<std::size_t>(s);
        }
    }
    if (!(cfg.t0 >= 0.0) || !std::isfinite(cfg.t1)) throw ConfigError("time range must start at t0 >= 0");
    if (!(cfg.t1 > cfg.t0)) throw ConfigError("empty time range: t1 must exceed t0");

    if (j.contains("grid")) {
        const auto& gj = j.at("grid");
        if (!gj.is_object()) throw ConfigError("'grid' must be an object");
        if (gj.contains("count")) {
            if (!gj.at("count").is_number_integer() || gj.at("count").get<long long>() < 16) {
                throw ConfigError("'grid.count' must be an integer >= 16");
            }
            cfg.grid_count = gj.at("count").get<std::size_t>();
        }
        if (gj.contains("x_min") || gj.contains("x_max")) {
            try {
                cfg.grid = SpatialGrid(detail::number(gj, "x_min"), detail::number(gj, "x_max"), cfg.grid_count);
            } catch (const ParameterError& e) {
                throw ConfigError(e.what());
            }
        }
    }
    if (j.contains("method")) {
        if (!j.at("method").is_string()) throw ConfigError("'method' must be a string");
        cfg.method = parse_method(j.at("method").get<std::string>());
    }
    if (j.contains("tol")) {
        cfg.tol = detail::number(j, "tol");
        try {
            classical::check_tolerance(cfg.tol);
        } catch (const ParameterError& e) {
            throw ConfigError(e.what());
        }
    }
    if (j.contains("initial")) {
        const auto& ij = j.at("initial");
        if (!ij.is_object()) throw ConfigError("'initial' must be an object");
        RhoSample s{detail::number(ij, "rho"), detail::number_or(ij, "rhodot", 0.0)};
        if (!(s.rho > 0.0)) throw ConfigError("'initial.rho' must be > 0");
        cfg.initial = s;
    }
    if (j.contains("output")) {
        if (!j.at("output").is_string()) throw ConfigError("'output' must be a string");
        cfg.output = j.at("output").get<std::string>();
    }

    if (cfg.method == MethodChoice::closed_form) {
        if (!has_closed_form(cfg.profile)) {
            throw ConfigError(std::string("no closed form for profile kind ") + kind_name(cfg.profile));
        }
        if (cfg.initial) throw ConfigError("closed forms use the default initial conditions; drop 'initial'");
    }
    try {
        check_domain(cfg.profile, 0.0, cfg.t1);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

inline RunConfig load_run_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    json j;
    try {
        j = json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON in '") + path + "': " + e.what());
    }
    return run_config_from_json(j);
}

/// Picks the EP solver for the config: closed form when available and the
/// initial conditions are the defaults, direct integration otherwise.
inline EPSolution solve_for(const RunConfig& cfg)
{
    const auto init = cfg.initial.value_or(default_initial(cfg.profile, cfg.constants));
    switch (cfg.method) {
    case MethodChoice::closed_form: return closed_form_solution(cfg.profile, cfg.constants, cfg.t1);
    case MethodChoice::direct: return solve_ep(cfg.profile, cfg.constants, init, cfg.t1, cfg.tol);
    case MethodChoice::pinney: return pinney_solution(cfg.profile, cfg.constants, init, cfg.t1, cfg.tol);
    case MethodChoice::automatic:
        if (has_closed_form(cfg.profile) && !cfg.initial) {
            return closed_form_solution(cfg.profile, cfg.constants, cfg.t1);
        }
        return solve_ep(cfg.profile, cfg.constants, init, cfg.t1, cfg.tol);
    }
    return solve_ep(cfg.profile, cfg.constants, init, cfg.t1, cfg.tol);
}

} // namespace tdho::io
