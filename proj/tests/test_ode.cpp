#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "tdho/ode.hpp"

using namespace tdho;

TEST(Ode, ExponentialDecay)
{
    ode::Options opt;
    opt.rtol = 1e-12;
    opt.atol = 1e-14;
    auto traj = ode::integrate<1>([](double, const ode::State<1>& y) { return ode::State<1>{-y[0]}; }, 0.0,
                                  ode::State<1>{1.0}, 5.0, opt);
    for (int k = 0; k <= 100; ++k) {
        const double t = 0.05 * k;
        EXPECT_NEAR(traj(t)[0], std::exp(-t), 1e-11) << "t=" << t;
    }
    EXPECT_EQ(traj.t_begin(), 0.0);
    EXPECT_EQ(traj.t_end(), 5.0);
}

TEST(Ode, HarmonicOscillatorDenseOutputBetweenSteps)
{
    ode::Options opt;
    opt.rtol = 1e-11;
    opt.atol = 1e-13;
    auto traj = ode::integrate<2>(
        [](double, const ode::State<2>& y) { return ode::State<2>{y[1], -4.0 * y[0]}; }, 0.0,
        ode::State<2>{1.0, 0.0}, 20.0, opt);
    ASSERT_GT(traj.steps(), 10u);
    for (int k = 0; k <= 997; ++k) {
        const double t = 20.0 * k / 997.0;
        const auto y = traj(t);
        EXPECT_NEAR(y[0], std::cos(2.0 * t), 2e-9);
        EXPECT_NEAR(y[1], -2.0 * std::sin(2.0 * t), 4e-9);
    }
}

TEST(Ode, StopsExactlyOnBreakpoints)
{
    // y' = 0 for t < 1, 1 afterwards: y(t) = max(0, t - 1).
    auto rhs = [](double t, const ode::State<1>&) { return ode::State<1>{t < 1.0 ? 0.0 : 1.0}; };
    const std::vector<double> breaks{1.0};
    auto traj = ode::integrate<1>(rhs, 0.0, ode::State<1>{0.0}, 3.0, ode::Options{}, breaks);
    bool hit = false;
    for (const auto& seg : traj.segments()) hit = hit || seg.t0 == 1.0;
    EXPECT_TRUE(hit);
    EXPECT_NEAR(traj(0.5)[0], 0.0, 1e-14);
    EXPECT_NEAR(traj(2.0)[0], 1.0, 1e-12);
    EXPECT_NEAR(traj(3.0)[0], 2.0, 1e-12);
}

TEST(Ode, OutsideSpanThrows)
{
    auto traj = ode::integrate<1>([](double, const ode::State<1>& y) { return ode::State<1>{y[0]}; }, 0.0,
                                  ode::State<1>{1.0}, 1.0, ode::Options{});
    EXPECT_THROW(traj(-1e-9), DomainError);
    EXPECT_THROW(traj(1.0 + 1e-9), DomainError);
}

TEST(Ode, StepBudgetRaisesConvergenceError)
{
    ode::Options opt;
    opt.max_steps = 5;
    EXPECT_THROW(ode::integrate<2>([](double, const ode::State<2>& y) { return ode::State<2>{y[1], -y[0]}; }, 0.0,
                                   ode::State<2>{1.0, 0.0}, 1000.0, opt),
                 ConvergenceError);
}

TEST(Ode, InvalidArguments)
{
    auto rhs = [](double, const ode::State<1>& y) { return y; };
    EXPECT_THROW(ode::integrate<1>(rhs, 1.0, ode::State<1>{1.0}, 1.0, ode::Options{}), DomainError);
    ode::Options bad;
    bad.rtol = 0.0;
    EXPECT_THROW(ode::integrate<1>(rhs, 0.0, ode::State<1>{1.0}, 1.0, bad), ParameterError);
}

TEST(Ode, ToleranceControlsError)
{
    auto rhs = [](double, const ode::State<2>& y) { return ode::State<2>{y[1], -y[0]}; };
    double prev = 1.0;
    for (double tol : {1e-5, 1e-8, 1e-11}) {
        ode::Options opt;
        opt.rtol = tol;
        opt.atol = tol * 1e-2;
        auto traj = ode::integrate<2>(rhs, 0.0, ode::State<2>{1.0, 0.0}, 10.0, opt);
        const double err = std::abs(traj(10.0)[0] - std::cos(10.0));
        EXPECT_LT(err, prev);
        EXPECT_LT(err, 100.0 * tol);
        prev = err;
    }
}
