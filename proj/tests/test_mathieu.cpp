#include <cmath>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tdho/mathieu.hpp"

using namespace tdho::mathieu;

TEST(Mathieu, ZeroCouplingReducesToTrigonometric)
{
    for (double a : {0.3, 1.0, 4.0}) {
        const double k = std::sqrt(a);
        for (int i = -40; i <= 80; ++i) {
            const double x = 0.25 * i;
            EXPECT_NEAR(mathieu_even({a, 0.0}, x).value, std::cos(k * x), 1e-10);
            EXPECT_NEAR(mathieu_odd({a, 0.0}, x).value, std::sin(k * x) / k, 1e-10);
        }
    }
    for (double x : {0.0, 3.0, 17.5}) {
        EXPECT_NEAR(mathieu_even({0.0, 0.0}, x).value, 1.0, 1e-12);
        EXPECT_NEAR(mathieu_odd({0.0, 0.0}, x).value, x, 1e-10);
    }
}

TEST(Mathieu, InitialConditions)
{
    const MathieuParams p{2.3, -1.7};
    const auto e = mathieu_even(p, 0.0);
    const auto o = mathieu_odd(p, 0.0);
    EXPECT_EQ(e.value, 1.0);
    EXPECT_EQ(e.derivative, 0.0);
    EXPECT_EQ(o.value, 0.0);
    EXPECT_EQ(o.derivative, 1.0);
}

TEST(Mathieu, MatchesFineStepReference)
{
    const MathieuParams p{1.0, 0.5};
    const auto even_ref = oracle_ref::mathieu_rk4(1.0, 0.5, 1.0, {1.0, 0.0}, 20000);
    const auto odd_ref = oracle_ref::mathieu_rk4(1.0, 0.5, 1.0, {0.0, 1.0}, 20000);
    EXPECT_NEAR(mathieu_even(p, 1.0).value, even_ref[0], 1e-10 * std::abs(even_ref[0]) + 1e-13);
    EXPECT_NEAR(mathieu_even(p, 1.0).derivative, even_ref[1], 1e-10 * std::abs(even_ref[1]) + 1e-13);
    EXPECT_NEAR(mathieu_odd(p, 1.0).value, odd_ref[0], 1e-10 * std::abs(odd_ref[0]) + 1e-13);
    EXPECT_NEAR(mathieu_odd(p, 1.0).derivative, odd_ref[1], 1e-10 * std::abs(odd_ref[1]) + 1e-13);
}

TEST(Mathieu, RandomParametersAgreeWithReferenceOverLongRange)
{
    auto g = oracle_ref::rng(3);
    for (int trial = 0; trial < 6; ++trial) {
        const double a = oracle_ref::uniform(g, -5.0, 5.0);
        const double q = oracle_ref::uniform(g, -5.0, 5.0);
        for (double x : {2.0, 9.5, 20.0}) {
            const auto ref = oracle_ref::mathieu_rk4(a, q, x, {1.0, 0.0}, 200000);
            const double scale = std::max(1.0, std::abs(ref[0]));
            EXPECT_NEAR(mathieu_even({a, q}, x).value / scale, ref[0] / scale, 1e-9) << a << " " << q << " " << x;
        }
    }
}

TEST(Mathieu, WronskianIdentity)
{
    auto g = oracle_ref::rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const MathieuParams p{oracle_ref::uniform(g, -5.0, 5.0), oracle_ref::uniform(g, -5.0, 5.0)};
        for (int i = -80; i <= 80; ++i) {
            const double x = 0.25 * i;
            const auto e = mathieu_even(p, x);
            const auto o = mathieu_odd(p, x);
            const double scale = std::max(1.0, std::abs(e.value * o.derivative) + std::abs(o.value * e.derivative));
            EXPECT_LT(std::abs(e.value * o.derivative - o.value * e.derivative - 1.0) / scale, 1e-9);
        }
    }
}

TEST(Mathieu, Parity)
{
    const MathieuParams p{0.8, 1.9};
    for (double x : {0.1, 1.3, 7.7, 19.0}) {
        EXPECT_NEAR(mathieu_even(p, -x).value, mathieu_even(p, x).value, 1e-10);
        EXPECT_NEAR(mathieu_odd(p, -x).value, -mathieu_odd(p, x).value, 1e-10);
        EXPECT_NEAR(mathieu_even(p, -x).derivative, -mathieu_even(p, x).derivative, 1e-10);
        EXPECT_NEAR(mathieu_odd(p, -x).derivative, mathieu_odd(p, x).derivative, 1e-10);
    }
}

TEST(Mathieu, ValuesIndependentOfQueryOrder)
{
    const MathieuParams p{3.1, 0.9};
    const double far = mathieu_even(p, 55.0).value;
    const double near = mathieu_even(p, 2.5).value;
    const MathieuParams q{3.1, 0.9 + 1e-300}; // distinct cache entry, fresh integration
    EXPECT_EQ(mathieu_even(q, 2.5).value, near);
    EXPECT_EQ(mathieu_even(q, 55.0).value, far);
}

TEST(Mathieu, ConcurrentQueriesAreConsistent)
{
    const MathieuParams p{-1.3, 2.2};
    std::vector<double> xs;
    for (int i = 0; i < 200; ++i) xs.push_back(0.3 * i);
    std::vector<double> a(xs.size()), b(xs.size());
    std::thread t1([&] {
        for (std::size_t i = 0; i < xs.size(); ++i) a[i] = mathieu_odd(p, xs[i]).value;
    });
    std::thread t2([&] {
        for (std::size_t i = xs.size(); i-- > 0;) b[i] = mathieu_odd(p, xs[i]).value;
    });
    t1.join();
    t2.join();
    EXPECT_EQ(a, b);
}

TEST(Mathieu, NonFiniteInputsRejected)
{
    EXPECT_THROW(mathieu_even({NAN, 0.0}, 1.0), tdho::ParameterError);
    EXPECT_THROW(mathieu_even({1.0, 0.0}, INFINITY), tdho::DomainError);
}
