#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tdho/io/csv.hpp"
#include "tdho/io/json.hpp"
#include "tdho/io/run_config.hpp"

using namespace tdho;
using namespace tdho::io;

TEST(Csv, FormatRoundTrips)
{
    auto g = oracle_ref::rng(41);
    for (int i = 0; i < 2000; ++i) {
        const double v = std::ldexp(oracle_ref::uniform(g, -1.0, 1.0), static_cast<int>(oracle_ref::uniform(g, -300, 300)));
        const auto s = format_double(v);
        EXPECT_EQ(std::strtod(s.c_str(), nullptr), v) << s;
    }
    EXPECT_EQ(format_double(0.5), "0.5");
    EXPECT_EQ(format_double(NAN), "nan");
    EXPECT_EQ(format_double(-INFINITY), "-inf");
}

TEST(Csv, WriterLayout)
{
    std::ostringstream os;
    CsvWriter w(os);
    w.comment("note");
    w.header({"a", "b", "c"});
    w.row({1.0, std::nullopt, 0.25});
    w.row(std::vector<double>{2.0, 3.0});
    EXPECT_EQ(os.str(), "# note\na,b,c\n1,,0.25\n2,3\n");
}

TEST(Json, ProfilesRoundTrip)
{
    const std::vector<FrequencyProfile> profiles = {
        profile::Constant{1.3},
        profile::SuddenJump{1.0, 2.0},
        profile::PaulTrap{1.0, 1.0, 0.5, 3.0},
        profile::ParametricResonance{1.0, 0.1, 0.01},
        profile::Tabulated({0.0, 1.0, 2.5}, {1.0, 1.5, 0.75}),
    };
    for (const auto& p : profiles) {
        const auto j = profile_to_json(p);
        const auto back = profile_from_json(json::parse(j.dump()));
        EXPECT_EQ(profile_to_json(back), j);
        for (double t : {0.0, 0.7, 2.5}) EXPECT_EQ(omega_at(back, t), omega_at(p, t));
    }
}

TEST(Json, ProfileErrors)
{
    EXPECT_THROW(profile_from_json(json::parse(R"({"omega0": 1})")), ConfigError);
    EXPECT_THROW(profile_from_json(json::parse(R"({"kind": "wobble"})")), ConfigError);
    EXPECT_THROW(profile_from_json(json::parse(R"({"kind": "constant"})")), ConfigError);
    EXPECT_THROW(profile_from_json(json::parse(R"({"kind": "constant", "omega0": "1"})")), ConfigError);
    EXPECT_THROW(profile_from_json(json::parse(R"({"kind": "constant", "omega0": -1})")), ConfigError);
    EXPECT_THROW(profile_from_json(json::parse(R"({"kind": "tabulated", "t": [0, 1], "omega": [1]})")), ConfigError);
}

TEST(Json, ConstantsDefaults)
{
    const auto c = constants_from_json(json(), 2.5);
    EXPECT_EQ(c.m0, 1.0);
    EXPECT_EQ(c.hbar, 1.0);
    EXPECT_EQ(c.omega0, 2.5);
    const auto d = constants_from_json(json::parse(R"({"hbar": 2})"));
    EXPECT_EQ(d.hbar, 2.0);
    EXPECT_EQ(d.omega0, 1.0);
    EXPECT_EQ(constants_from_json(constants_to_json(d)).hbar, 2.0);
    EXPECT_THROW(constants_from_json(json::parse(R"({"m0": 0})")), ConfigError);
}

TEST(RunConfig, DefaultsAndTimes)
{
    const auto cfg = run_config_from_json(json::parse(R"({"profile": {"kind": "constant", "omega0": 1.5}})"));
    EXPECT_EQ(cfg.n, 0);
    EXPECT_EQ(cfg.constants.omega0, 1.5);
    EXPECT_EQ(cfg.method, MethodChoice::automatic);
    const auto ts = cfg.times();
    ASSERT_EQ(ts.size(), 101u);
    EXPECT_EQ(ts.front(), 0.0);
    EXPECT_EQ(ts.back(), 10.0);
    EXPECT_EQ(io::solve_for(cfg).method(), EPMethod::closed_form);
}

TEST(RunConfig, MethodSelection)
{
    auto cfg = run_config_from_json(json::parse(
        R"({"profile": {"kind": "sudden_jump", "omega0": 1, "omega1": 2}, "initial": {"rho": 0.9}, "time": {"t1": 3}})"));
    EXPECT_EQ(io::solve_for(cfg).method(), EPMethod::direct);
    cfg = run_config_from_json(json::parse(
        R"({"profile": {"kind": "sudden_jump", "omega0": 1, "omega1": 2}, "method": "pinney", "time": {"t1": 3}})"));
    EXPECT_EQ(io::solve_for(cfg).method(), EPMethod::pinney);
    cfg = run_config_from_json(json::parse(
        R"({"profile": {"kind": "parametric_resonance", "Omega0": 1, "h": 0.1, "eps": 0}, "time": {"t1": 3}})"));
    EXPECT_EQ(io::solve_for(cfg).method(), EPMethod::direct);
}

TEST(RunConfig, Errors)
{
    const std::vector<std::string> bad = {
        R"([])",
        R"({})",
        R"({"profile": {"kind": "constant", "omega0": 1}, "n": -1})",
        R"({"profile": {"kind": "constant", "omega0": 1}, "n": 1.5})",
        R"({"profile": {"kind": "constant", "omega0": 1}, "time": {"t0": 2, "t1": 2}})",
        R"({"profile": {"kind": "constant", "omega0": 1}, "time": {"t0": -1, "t1": 2}})",
        R"({"profile": {"kind": "constant", "omega0": 1}, "time": {"samples": 1}})",
        R"({"profile": {"kind": "constant", "omega0": 1}, "grid": {"count": 8}})",
        R"({"profile": {"kind": "constant", "omega0": 1}, "grid": {"x_min": 1, "x_max": -1}})",
        R"({"profile": {"kind": "constant", "omega0": 1}, "tol": 1e-2})",
        R"({"profile": {"kind": "constant", "omega0": 1}, "initial": {"rho": 0}})",
        R"({"profile": {"kind": "constant", "omega0": 1}, "method": "magic"})",
        R"({"profile": {"kind": "constant", "omega0": 1}, "method": "closed_form", "initial": {"rho": 1}})",
        R"({"profile": {"kind": "parametric_resonance", "Omega0": 1, "h": 0.1, "eps": 0}, "method": "closed_form"})",
        R"({"profile": {"kind": "tabulated", "t": [0, 1], "omega": [1, 1]}, "time": {"t1": 5}})",
    };
    for (const auto& text : bad) EXPECT_THROW(run_config_from_json(json::parse(text)), ConfigError) << text;
}

TEST(RunConfig, LoadFromFile)
{
    const auto dir = std::filesystem::temp_directory_path() / "tdho_io_test";
    std::filesystem::create_directories(dir);
    const auto good = dir / "good.json";
    std::ofstream(good) << R"({"profile": {"kind": "paul_trap", "omega0": 1, "beta": 1, "gamma": 0.5, "tau": 3}, "n": 2})";
    EXPECT_EQ(load_run_config(good.string()).n, 2);
    const auto broken = dir / "broken.json";
    std::ofstream(broken) << "{ not json";
    EXPECT_THROW(load_run_config(broken.string()), ConfigError);
    EXPECT_THROW(load_run_config((dir / "missing.json").string()), ConfigError);
}
