#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "tdho/errors.hpp"
#include "tdho/ode.hpp"
#include "tdho/profiles.hpp"

namespace tdho::classical {

/// Rejects tolerances outside the supported window [1e-14, 1e-3].
inline void check_tolerance(double tol)
{
    if (!(tol >= 1e-14 && tol <= 1e-3)) {
        throw ParameterError("tolerance must lie in [1e-14, 1e-3], got " + std::to_string(tol));
    }
}

struct ModeSample {
    double u = 0.0;
    double udot = 0.0;
    double v = 0.0;
    double vdot = 0.0;
};

/// Two independent solutions u, v of k'' + omega(t)^2 k = 0 sharing one
/// dense trajectory.
class ModePair {
public:
    ModePair() = default;
    ModePair(ode::Trajectory<4> traj, double wronskian0) : traj_(std::move(traj)), w0_(wronskian0) {}

    double t_begin() const noexcept { return traj_.t_begin(); }
    double t_end() const noexcept { return traj_.t_end(); }
    double wronskian0() const noexcept { return w0_; }
    const ode::Trajectory<4>& trajectory() const noexcept { return traj_; }

    ModeSample operator()(double t) const
    {
        const auto y = traj_(t);
        return {y[0], y[1], y[2], y[3]};
    }

private:
    ode::Trajectory<4> traj_;
    double w0_ = 1.0;
};

/// u(t0) = 1, u'(t0) = 0, v(t0) = 0, v'(t0) = 1, so W = 1 for all t.
inline ModePair solve_homogeneous(const FrequencyProfile& profile, double t0, double t1, double tol)
{
    check_tolerance(tol);
    if (!(t1 > t0)) throw DomainError("solve_homogeneous: requires t1 > t0");
    validate(profile);
    check_domain(profile, t0, t1);

    auto rhs = [&profile](double t, const ode::State<4>& y) {
        const double w2 = omega_sq_at(profile, t);
        return ode::State<4>{y[1], -w2 * y[0], y[3], -w2 * y[2]};
    };
    ode::Options opt;
    opt.rtol = tol;
    opt.atol = tol * 1e-2;
    const auto breaks = breakpoints(profile, t0, t1);
    auto traj = ode::integrate<4>(rhs, t0, ode::State<4>{1.0, 0.0, 0.0, 1.0}, t1, opt, breaks);
    return ModePair(std::move(traj), 1.0);
}

inline double wronskian(const ModeSample& s) { return s.u * s.vdot - s.v * s.udot; }

inline double wronskian(const ModePair& pair, double t) { return wronskian(pair(t)); }

/// Landau-Lifshitz swing near the first parametric resonance.
struct SwingSolution {
    double Theta0_1 = 1.0;
    double Theta0_2 = 0.0;
    double Omega0 = 1.0;
    double h = 0.1;
    double eps = 0.0;

    /// s = 1/2 sqrt((h Omega0 / 2)^2 - eps^2); requires |eps| < h Omega0 / 2.
    double growth_exponent() const
    {
        const double half_width = h * Omega0 / 2.0;
        if (!(std::abs(eps) < half_width)) {
            throw ParameterError("swing: |eps| must be < h*Omega0/2 for a real growth exponent");
        }
        return 0.5 * std::sqrt(half_width * half_width - eps * eps);
    }
};

inline double swing_theta(const SwingSolution& sol, double t)
{
    const double s = sol.growth_exponent();
    const double phase = (sol.Omega0 + sol.eps / 2.0) * t;
    return sol.Theta0_1 * std::exp(s * t) * std::cos(phase) +
           sol.Theta0_2 * std::exp(-s * t) * std::sin(phase);
}

} // namespace tdho::classical
