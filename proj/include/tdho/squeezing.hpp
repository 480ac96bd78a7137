#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "tdho/ermakov.hpp"
#include "tdho/errors.hpp"

namespace tdho {

/// Squeezing parameters of the LR state family at one instant.
struct SqueezingState {
    double r = 0.0;
    std::optional<double> phi; ///< empty when r == 0 (the phase is undefined)
    double lambda = 1.0;
    double omega = 1.0;
    double t = 0.0;
};

inline constexpr double phase_clamp_slack = 1e-9;
inline constexpr double undefined_phase_below = 1e-12;

/// Builds (r, phi, lambda) from rho, rhodot and the instantaneous frequency.
/// lambda - 1 = sinh^2 r is formed directly as a sum of squares.
inline SqueezingState squeeze_from(RhoSample s, double omega, double m0, double t = 0.0)
{
    const double mw = m0 * omega;
    const double mismatch = 1.0 / s.rho - mw * s.rho;
    const double sinh2 = (m0 * m0 * s.rhodot * s.rhodot + mismatch * mismatch) / (4.0 * mw);
    SqueezingState st;
    st.lambda = 1.0 + sinh2;
    st.omega = omega;
    st.t = t;
    const double sh = std::sqrt(sinh2);
    st.r = std::asinh(sh);
    if (st.r < undefined_phase_below) return st;

    const double ch = std::sqrt(1.0 + sinh2);
    double arg = ((mw * s.rho * s.rho - 1.0) - 2.0 * sinh2) / (2.0 * sh * ch);
    if (arg > 1.0 + phase_clamp_slack || arg < -1.0 - phase_clamp_slack || !std::isfinite(arg)) {
        throw ConsistencyError("squeezing phase argument " + std::to_string(arg) + " outside [-1, 1]");
    }
    arg = std::clamp(arg, -1.0, 1.0);
    st.phi = std::acos(arg);
    return st;
}

inline SqueezingState squeeze_state(const EPSolution& ep, double t)
{
    return squeeze_from(ep(t), ep.omega(t), ep.constants().m0, t);
}

/// Time-independent squeezing after a sudden jump omega0 -> omega1.
inline double sudden_jump_r(double omega0, double omega1)
{
    if (!(omega0 > 0.0) || !(omega1 > 0.0)) throw ParameterError("sudden_jump_r: frequencies must be > 0");
    const double arg = (omega0 + omega1) / (2.0 * std::sqrt(omega0 * omega1));
    return arg <= 1.0 ? 0.0 : std::acosh(arg);
}

namespace detail {

inline double cross_term(const SqueezingState& s)
{
    if (!s.phi) return 0.0;
    return 2.0 * std::sinh(s.r) * std::cosh(s.r) * std::cos(*s.phi);
}

inline void check_level(int n)
{
    if (n < 0) throw DomainError("quantum number must be >= 0");
}

} // namespace detail

inline double variance_x(int n, const SqueezingState& s, const OscillatorConstants& c)
{
    detail::check_level(n);
    const double ch = std::cosh(s.r), sh = std::sinh(s.r);
    return (ch * ch + detail::cross_term(s) + sh * sh) * (n + 0.5) * c.hbar / (c.m0 * s.omega);
}

inline double variance_p(int n, const SqueezingState& s, const OscillatorConstants& c)
{
    detail::check_level(n);
    const double ch = std::cosh(s.r), sh = std::sinh(s.r);
    return (ch * ch - detail::cross_term(s) + sh * sh) * (n + 0.5) * c.hbar * c.m0 * s.omega;
}

/// Probability of the ground state ending up in level nu (nu even).
inline double transition_prob(int nu, double r)
{
    if (nu < 0 || nu % 2 != 0) {
        throw DomainError("transition_prob: nu must be an even natural number, got " + std::to_string(nu));
    }
    if (!(r >= 0.0)) throw DomainError("transition_prob: r must be >= 0");
    const double th = std::tanh(r);
    if (nu == 0) return 1.0 / std::cosh(r);
    if (th == 0.0) return 0.0;
    if (nu <= 40) {
        double ratio = 1.0; // nu! / (2^nu ((nu/2)!)^2)
        for (int k = 1; k <= nu / 2; ++k) {
            ratio *= static_cast<double>(2 * k - 1) / static_cast<double>(2 * k);
        }
        return ratio * std::pow(th, nu) / std::cosh(r);
    }
    const double log_p = std::lgamma(nu + 1.0) - nu * std::log(2.0) - 2.0 * std::lgamma(nu / 2.0 + 1.0) +
                         nu * std::log(th) - std::log(std::cosh(r));
    return std::exp(log_p);
}

inline double persistence_prob(double r)
{
    if (!(r >= 0.0)) throw DomainError("persistence_prob: r must be >= 0");
    return 1.0 / std::cosh(r);
}

inline double excitation_prob(double r) { return 1.0 - persistence_prob(r); }

/// Ground-state persistence after a sudden jump: 2 sqrt(w0 w1) / (w0 + w1).
inline double sudden_jump_persistence(double omega0, double omega1)
{
    if (!(omega0 > 0.0) || !(omega1 > 0.0)) {
        throw ParameterError("sudden_jump_persistence: frequencies must be > 0");
    }
    return 2.0 * std::sqrt(omega0 * omega1) / (omega0 + omega1);
}

/// Probability that an energy measurement after the jump returns `energy`,
/// starting from the ground state of omega0. Values off the post-jump
/// spectrum hbar omega1 (k + 1/2) have probability zero, as do odd levels.
inline double sudden_jump_energy_probability(double energy, double omega0, double omega1, double hbar = 1.0)
{
    const double level = energy / (hbar * omega1) - 0.5;
    const double k = std::round(level);
    if (k < 0.0 || std::abs(level - k) > 1e-9 * std::max(1.0, std::abs(level))) return 0.0;
    const int nu = static_cast<int>(k);
    if (nu % 2 != 0) return 0.0;
    return transition_prob(nu, sudden_jump_r(omega0, omega1));
}

} // namespace tdho
