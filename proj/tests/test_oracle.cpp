#include <cmath>

#include <gtest/gtest.h>

#include "tdho/oracle.hpp"
#include "tdho/wavefunction.hpp"

using namespace tdho;
using namespace tdho::oracle;

namespace {

const OscillatorConstants unit{1.0, 1.0, 1.0};

WaveField ground(const SpatialGrid& g, const OscillatorConstants& c = unit)
{
    return psi_n_static(0, g, 0.0, c);
}

} // namespace

TEST(Oracle, StationaryStateOnlyPicksUpPhase)
{
    const SpatialGrid g(-10.0, 10.0, 1025);
    PropagationConfig cfg{g, 0.005, 2.0, profile::Constant{1.0}, unit};
    const auto out = propagate(ground(g), cfg);
    ASSERT_EQ(out.size(), 1u);
    const auto exact = psi_n_static(0, g, 2.0, unit);
    EXPECT_GT(std::abs(overlap(exact, out.back())), 1.0 - 1e-4);
}

TEST(Oracle, NormConservedOverManySteps)
{
    const SpatialGrid g(-10.0, 10.0, 513);
    PropagationConfig cfg{g, 0.005, 50.0, profile::PaulTrap{1.0, 1.0, 0.5, 3.0}, unit};
    const auto out = propagate(ground(g), cfg, {10.0, 25.0});
    ASSERT_EQ(out.size(), 3u);
    EXPECT_EQ(out[0].t, 10.0);
    EXPECT_EQ(out[2].t, 50.0);
    for (const auto& f : out) EXPECT_NEAR(norm_sq(f), 1.0, 1e-10);
}

TEST(Oracle, SuddenJumpPersistence)
{
    const SpatialGrid g(-10.0, 10.0, 2049);
    PropagationConfig cfg{g, 0.0025, 3.0, profile::SuddenJump{1.0, 2.0}, unit};
    const auto out = propagate(ground(g), cfg, {1.0, 2.0});
    ASSERT_EQ(out.size(), 3u);
    // overlap with the new ground state is time independent up to phase
    const OscillatorConstants after{1.0, 1.0, 2.0};
    for (const auto& f : out) {
        const auto g1 = psi_n_static(0, g, 0.0, after);
        EXPECT_NEAR(std::norm(overlap(g1, f)), 2.0 * std::sqrt(2.0) / 3.0, 1e-4) << f.t;
    }
}

TEST(Oracle, ConfigErrors)
{
    const SpatialGrid g(-10.0, 10.0, 257);
    const auto psi = ground(g);
    PropagationConfig cfg{g, 0.005, 1.0, profile::Constant{1.0}, unit};
    EXPECT_NO_THROW(check_config(psi, cfg));

    auto bad_dt = cfg;
    bad_dt.dt = 0.02;
    EXPECT_THROW(check_config(psi, bad_dt), ParameterError);
    auto bad_end = cfg;
    bad_end.t_end = 0.0;
    EXPECT_THROW(check_config(psi, bad_end), ParameterError);
    auto other_grid = cfg;
    other_grid.grid = SpatialGrid(-10.0, 10.0, 129);
    EXPECT_THROW(check_config(psi, other_grid), UsageError);

    auto unnormalised = psi;
    for (auto& v : unnormalised.values) v *= 2.0;
    EXPECT_THROW(check_config(unnormalised, cfg), ParameterError);

    const SpatialGrid narrow(-1.0, 1.0, 257);
    PropagationConfig ncfg{narrow, 0.005, 1.0, profile::Constant{1.0}, unit};
    auto clipped = ground(narrow);
    const double nrm = std::sqrt(norm_sq(clipped));
    for (auto& v : clipped.values) v /= nrm;
    EXPECT_THROW(check_config(clipped, ncfg), ParameterError);
}
