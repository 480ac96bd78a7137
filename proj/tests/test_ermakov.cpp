#include <cmath>
#include <functional>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tdho/ermakov.hpp"

using namespace tdho;

namespace {

const OscillatorConstants unit{1.0, 1.0, 1.0};
const profile::PaulTrap trap{1.0, 1.0, 0.5, 3.0};

} // namespace

TEST(Ermakov, StaticRho)
{
    EXPECT_EQ(rho_static(unit), 1.0);
    EXPECT_DOUBLE_EQ(rho_static(OscillatorConstants{2.0, 1.0, 2.0}), 0.5);
    const auto init = default_initial(profile::SuddenJump{1.0, 2.0}, OscillatorConstants{1.0, 1.0, 1.0});
    EXPECT_EQ(init.rho, 1.0);
    EXPECT_EQ(init.rhodot, 0.0);
}

TEST(Ermakov, PinneyConstantsForStaticStart)
{
    const auto k = pinney_constants_for({1.0, 0.0}, 1.0);
    EXPECT_EQ(k.A, 1.0);
    EXPECT_EQ(k.B, 1.0);
    EXPECT_EQ(k.C, 0.0);
    const auto k2 = pinney_constants_for({0.5, 0.3}, 2.0);
    EXPECT_NEAR(k2.A * k2.B - k2.C * k2.C, 0.25, 1e-15);
    EXPECT_THROW(pinney_constants_for({0.0, 0.0}, 1.0), DomainError);
}

TEST(Ermakov, PinneyComposeRejectsInconsistentConstants)
{
    const classical::ModeSample s{1.0, 0.0, 0.0, 1.0};
    EXPECT_THROW(pinney_compose(s, PinneyConstants{1.0, 2.0, 0.0}, 1.0, 1.0), ConstantsError);
    const auto r = pinney_compose(s, PinneyConstants{1.0, 1.0, 0.0}, 1.0, 1.0);
    EXPECT_EQ(r.rho, 1.0);
    EXPECT_EQ(r.rhodot, 0.0);
}

TEST(Ermakov, DirectConstantProfileStaysStatic)
{
    const auto ep = solve_ep(profile::Constant{1.0}, unit, 10.0, 1e-10);
    EXPECT_EQ(ep.method(), EPMethod::direct);
    for (int k = 0; k <= 100; ++k) {
        const auto s = ep(0.1 * k);
        EXPECT_NEAR(s.rho, 1.0, 1e-12);
        EXPECT_NEAR(s.rhodot, 0.0, 1e-12);
    }
}

TEST(Ermakov, JumpAgreesWithClosedForm)
{
    const OscillatorConstants c{1.3, 1.0, 1.0};
    const profile::SuddenJump j{1.0, 2.0};
    const auto direct = solve_ep(j, c, 10.0, 1e-10);
    const auto pinney = pinney_solution(j, c, 10.0, 1e-10);
    for (int k = 0; k <= 200; ++k) {
        const double t = 0.05 * k;
        const double ref = oracle_ref::rho_jump(t, 1.0, 2.0, c.m0);
        EXPECT_NEAR(direct(t).rho, ref, 1e-8) << t;
        EXPECT_NEAR(pinney(t).rho, ref, 1e-8) << t;
        EXPECT_NEAR(rho_sudden_jump(t, 1.0, 2.0, c.m0).rho, ref, 1e-14) << t;
    }
    EXPECT_THROW(rho_sudden_jump(-1.0, 1.0, 2.0, 1.0), DomainError);
}

TEST(Ermakov, JumpDerivativeMatchesFiniteDifference)
{
    std::function<double(double)> f = [](double t) { return rho_sudden_jump(t, 1.0, 3.0, 0.7).rho; };
    for (double t : {0.4, 1.1, 2.9}) {
        EXPECT_NEAR(rho_sudden_jump(t, 1.0, 3.0, 0.7).rhodot, oracle_ref::central_diff(f, t, 1e-3), 1e-9);
    }
}

TEST(Ermakov, PaulTrapAgreesWithClosedForm)
{
    const auto direct = solve_ep(trap, unit, 15.0, 1e-10);
    const auto closed = closed_form_solution(trap, unit, 15.0);
    EXPECT_EQ(closed.method(), EPMethod::closed_form);
    for (int k = 0; k <= 150; ++k) {
        const double t = 0.1 * k;
        EXPECT_NEAR(direct(t).rho, closed(t).rho, 1e-7 * closed(t).rho) << t;
        EXPECT_NEAR(direct(t).rhodot, closed(t).rhodot, 1e-7 * (1.0 + std::abs(closed(t).rhodot))) << t;
    }
}

TEST(Ermakov, PaulTrapClosedFormMatchesReferenceMathieu)
{
    // rho^2 = u^2 / (m0 omega0) + omega0 v^2 / m0 with u, v the standard pair,
    // u, v from an RK4 integration of the Mathieu equation.
    const auto mp = paul_trap_mathieu_params(trap);
    const double dxdt = std::numbers::pi / trap.tau;
    for (double t : {0.7, 2.2, 5.0}) {
        const double x = dxdt * t;
        const auto ue = oracle_ref::mathieu_rk4(mp.a, mp.q, x, {1.0, 0.0}, 40000);
        const auto vo = oracle_ref::mathieu_rk4(mp.a, mp.q, x, {0.0, 1.0}, 40000);
        const double u = ue[0], v = vo[0] / dxdt;
        const double ref = std::sqrt(u * u / trap.omega0 + trap.omega0 * v * v);
        EXPECT_NEAR(rho_paul_trap(t, trap, 1.0).rho, ref, 1e-9) << t;
    }
}

TEST(Ermakov, ResidualOfEquationIsSmall)
{
    const std::vector<FrequencyProfile> profiles = {
        profile::SuddenJump{1.0, 2.0},
        trap,
        profile::ParametricResonance{1.0, 0.1, 0.01},
        profile::Tabulated({0.0, 2.0, 5.0, 10.0}, {1.0, 2.0, 0.8, 1.5}),
    };
    for (const auto& p : profiles) {
        const auto ep = solve_ep(p, unit, 10.0, 1e-10);
        std::function<double(double)> rho = [&ep](double t) { return ep(t).rho; };
        std::function<double(double)> rhodot = [&ep](double t) { return ep(t).rhodot; };
        for (double t : {0.5, 1.3, 3.3, 7.7, 9.1}) {
            const double r = ep(t).rho;
            const double rdd = oracle_ref::central_diff(rhodot, t, 1e-3);
            EXPECT_NEAR(rdd + ep.omega_sq(t) * r - 1.0 / (r * r * r), 0.0, 1e-6) << kind_name(p) << " t=" << t;
            EXPECT_NEAR(ep(t).rhodot, oracle_ref::central_diff(rho, t, 1e-3), 1e-7);
            EXPECT_NEAR(ep.rho_ddot(t), rdd, 1e-6);
        }
    }
}

TEST(Ermakov, InvariantCoefficientsHaveUnitDeterminant)
{
    auto g = oracle_ref::rng(7);
    const OscillatorConstants c{1.7, 1.0, 1.0};
    const auto ep = solve_ep(trap, c, 15.0, 1e-10);
    for (int i = 0; i < 50; ++i) {
        const double t = oracle_ref::uniform(g, 0.0, 15.0);
        const auto eta = invariant_coefficients(ep, t);
        EXPECT_NEAR(eta.eta1 * eta.eta2 - eta.eta3 * eta.eta3, 1.0, 1e-12);
    }
    const auto st = invariant_coefficients(closed_form_solution(profile::Constant{2.0}, unit, 1.0), 0.5);
    EXPECT_DOUBLE_EQ(st.eta1, 2.0);
    EXPECT_DOUBLE_EQ(st.eta2, 0.5);
    EXPECT_EQ(st.eta3, 0.0);
}

TEST(Ermakov, JumpInvariantAtQuarterPeriod)
{
    // omega0 = 1, omega1 = 2, m0 = 1: at omega1 t = pi/2 rho^2 = omega0 / omega1^2.
    const auto ep = closed_form_solution(profile::SuddenJump{1.0, 2.0}, unit, 5.0);
    const auto eta = invariant_coefficients(ep, std::numbers::pi / 4.0);
    EXPECT_NEAR(eta.eta2, 0.25, 1e-15);
    EXPECT_NEAR(eta.eta3, 0.0, 1e-15);
}

TEST(Ermakov, BarrierKeepsRhoPositive)
{
    const auto ep = solve_ep(profile::Constant{1.0}, unit, RhoSample{1.0, -50.0}, 2.0, 1e-10);
    for (int k = 0; k <= 40; ++k) EXPECT_GT(ep(0.05 * k).rho, 0.0);
    EXPECT_THROW(solve_ep(profile::Constant{1.0}, unit, RhoSample{0.0, 0.0}, 2.0, 1e-10), DomainError);
    EXPECT_THROW(solve_ep(profile::Constant{1.0}, unit, 0.0, 1e-10), DomainError);
    EXPECT_THROW(ep(3.0), DomainError);
}

TEST(Ermakov, ClosedFormAvailability)
{
    EXPECT_TRUE(has_closed_form(profile::Constant{}));
    EXPECT_TRUE(has_closed_form(profile::SuddenJump{}));
    EXPECT_TRUE(has_closed_form(trap));
    EXPECT_FALSE(has_closed_form(profile::ParametricResonance{1.0, 0.1, 0.0}));
    EXPECT_THROW(closed_form_solution(profile::ParametricResonance{1.0, 0.1, 0.0}, unit, 1.0), ParameterError);
}

TEST(Ermakov, PhaseIntegralAgreesWithGaussLegendre)
{
    const OscillatorConstants c{1.0, 1.0, 1.0};
    const auto ep = closed_form_solution(profile::SuddenJump{1.0, 2.0}, c, 10.0);
    std::function<double(double)> f = [](double s) {
        const double r = oracle_ref::rho_jump(s, 1.0, 2.0, 1.0);
        return 1.0 / (r * r);
    };
    for (double t : {0.5, 3.0, 10.0}) {
        EXPECT_NEAR(phase_integral(ep, t), oracle_ref::composite_gl(f, 0.0, t, 64), 1e-11) << t;
    }
    // one full period of rho^2 after the jump
    const double half = std::numbers::pi / 2.0;
    EXPECT_NEAR(phase_integral(ep, half), std::numbers::pi, 1e-11);
    const auto st = closed_form_solution(profile::Constant{1.5}, c, 10.0);
    EXPECT_NEAR(phase_integral(st, 4.0), 6.0, 1e-12);
    EXPECT_THROW(phase_integral(st, 11.0), DomainError);
}
