#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tdho/errors.hpp"
#include "tdho/profiles.hpp"

// JSON mapping for profiles and constants. Profiles carry a "kind"
// discriminator; numeric fields use the member names of the profile structs.

namespace tdho::io {

using nlohmann::json;

/// Malformed or inconsistent configuration document.
class ConfigError : public Error {
public:
    using Error::Error;
};

namespace detail {

inline double number(const json& j, const char* key)
{
    if (!j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
    if (!j.at(key).is_number()) throw ConfigError(std::string("field '") + key + "' must be a number");
    return j.at(key).get<double>();
}

inline double number_or(const json& j, const char* key, double fallback)
{
    return j.contains(key) ? number(j, key) : fallback;
}

inline std::vector<double> numbers(const json& j, const char* key)
{
    if (!j.contains(key) || !j.at(key).is_array()) {
        throw ConfigError(std::string("field '") + key + "' must be an array of numbers");
    }
    std::vector<double> out;
    for (const auto& v : j.at(key)) {
        if (!v.is_number()) throw ConfigError(std::string("field '") + key + "' must contain numbers only");
        out.push_back(v.get<double>());
    }
    return out;
}

} // namespace detail

inline FrequencyProfile profile_from_json(const json& j)
{
    if (!j.is_object()) throw ConfigError("profile must be a JSON object");
    if (!j.contains("kind") || !j.at("kind").is_string()) throw ConfigError("profile needs a string 'kind'");
    const auto kind = j.at("kind").get<std::string>();
    using detail::number;
    FrequencyProfile p;
    try {
        if (kind == "constant") {
            p = profile::Constant{number(j, "omega0")};
        } else if (kind == "sudden_jump") {
            p = profile::SuddenJump{number(j, "omega0"), number(j, "omega1")};
        } else if (kind == "paul_trap") {
            p = profile::PaulTrap{number(j, "omega0"), number(j, "beta"), number(j, "gamma"), number(j, "tau")};
        } else if (kind == "parametric_resonance") {
            p = profile::ParametricResonance{number(j, "Omega0"), number(j, "h"), number(j, "eps")};
        } else if (kind == "tabulated") {
            p = profile::Tabulated(detail::numbers(j, "t"), detail::numbers(j, "omega"));
        } else {
            throw ConfigError("unknown profile kind '" + kind + "'");
        }
        validate(p);
    } catch (const ParameterError& e) {
        throw ConfigError(e.what());
    }
    return p;
}

inline json profile_to_json(const FrequencyProfile& p)
{
    return std::visit(overloaded{
                          [](const profile::Constant& c) {
                              return json{{"kind", "constant"}, {"omega0", c.omega0}};
                          },
                          [](const profile::SuddenJump& s) {
                              return json{{"kind", "sudden_jump"}, {"omega0", s.omega0}, {"omega1", s.omega1}};
                          },
                          [](const profile::PaulTrap& pt) {
                              return json{{"kind", "paul_trap"},
                                          {"omega0", pt.omega0},
                                          {"beta", pt.beta},
                                          {"gamma", pt.gamma},
                                          {"tau", pt.tau}};
                          },
                          [](const profile::ParametricResonance& pr) {
                              return json{{"kind", "parametric_resonance"},
                                          {"Omega0", pr.Omega0},
                                          {"h", pr.h},
                                          {"eps", pr.eps}};
                          },
                          [](const profile::Tabulated& tb) {
                              return json{{"kind", "tabulated"}, {"t", tb.times()}, {"omega", tb.omegas()}};
                          },
                      },
                      p);
}

/// Missing fields default to 1; omega0 falls back to `default_omega0`.
inline OscillatorConstants constants_from_json(const json& j, double default_omega0 = 1.0)
{
    OscillatorConstants c{1.0, 1.0, default_omega0};
    if (!j.is_null()) {
        if (!j.is_object()) throw ConfigError("constants must be a JSON object");
        c.m0 = detail::number_or(j, "m0", 1.0);
        c.hbar = detail::number_or(j, "hbar", 1.0);
        c.omega0 = detail::number_or(j, "omega0", default_omega0);
    }
    try {
        c.validate();
    } catch (const ParameterError& e) {
        throw ConfigError(e.what());
    }
    return c;
}

inline json constants_to_json(const OscillatorConstants& c)
{
    return json{{"m0", c.m0}, {"hbar", c.hbar}, {"omega0", c.omega0}};
}

} // namespace tdho::io
