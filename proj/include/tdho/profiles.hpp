#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "tdho/errors.hpp"

namespace tdho {

/// Mass, action quantum and reference frequency of the oscillator.
struct OscillatorConstants {
    double m0 = 1.0;
    double hbar = 1.0;
    double omega0 = 1.0;

    void validate() const
    {
        if (!(m0 > 0.0) || !(hbar > 0.0) || !(omega0 > 0.0) || !std::isfinite(m0) ||
            !std::isfinite(hbar) || !std::isfinite(omega0)) {
            throw ParameterError("oscillator constants m0, hbar, omega0 must be finite and > 0");
        }
    }
};

namespace profile {

struct Constant {
    double omega0 = 1.0;
};

/// omega0 for t < 0, omega1 for t >= 0.
struct SuddenJump {
    double omega0 = 1.0;
    double omega1 = 2.0;
};

/// omega(t)^2 = omega0^2 (beta + gamma cos(2 pi t / tau)) / (beta + gamma)
struct PaulTrap {
    double omega0 = 1.0;
    double beta = 1.0;
    double gamma = 0.5;
    double tau = 3.0;
};

/// Omega(t)^2 = Omega0^2 (1 + h cos((2 Omega0 + eps) t))
struct ParametricResonance {
    double Omega0 = 1.0;
    double h = 0.1;
    double eps = 0.0;
};

/// Sampled omega(t) with monotone (Fritsch-Carlson) cubic interpolation.
class Tabulated {
public:
    Tabulated() = default;

    Tabulated(std::vector<double> t, std::vector<double> omega)
        : t_(std::move(t)), omega_(std::move(omega))
    {
        if (t_.size() != omega_.size() || t_.size() < 2) {
            throw ParameterError("tabulated profile needs >= 2 (t, omega) samples of equal length");
        }
        for (std::size_t i = 0; i < t_.size(); ++i) {
            if (!std::isfinite(t_[i]) || !(omega_[i] > 0.0) || !std::isfinite(omega_[i])) {
                throw ParameterError("tabulated omega samples must be finite and > 0");
            }
            if (i > 0 && !(t_[i] > t_[i - 1])) {
                throw ParameterError("tabulated times must be strictly increasing");
            }
        }
        build_slopes();
    }

    const std::vector<double>& times() const noexcept { return t_; }
    const std::vector<double>& omegas() const noexcept { return omega_; }
    double t_min() const noexcept { return t_.front(); }
    double t_max() const noexcept { return t_.back(); }

    double operator()(double t) const
    {
        if (!(t >= t_.front() && t <= t_.back())) {
            throw DomainError("time " + std::to_string(t) + " outside tabulated profile domain");
        }
        auto it = std::upper_bound(t_.begin(), t_.end(), t);
        std::size_t k = it == t_.begin() ? 0 : static_cast<std::size_t>(it - t_.begin()) - 1;
        k = std::min(k, t_.size() - 2);
        const double h = t_[k + 1] - t_[k];
        const double s = (t - t_[k]) / h;
        const double s2 = s * s;
        const double s3 = s2 * s;
        const double h00 = 2 * s3 - 3 * s2 + 1;
        const double h10 = s3 - 2 * s2 + s;
        const double h01 = -2 * s3 + 3 * s2;
        const double h11 = s3 - s2;
        return h00 * omega_[k] + h10 * h * slope_[k] + h01 * omega_[k + 1] + h11 * h * slope_[k + 1];
    }

private:
    void build_slopes()
    {
        const std::size_t n = t_.size();
        std::vector<double> delta(n - 1);
        for (std::size_t k = 0; k + 1 < n; ++k) {
            delta[k] = (omega_[k + 1] - omega_[k]) / (t_[k + 1] - t_[k]);
        }
        slope_.assign(n, 0.0);
        slope_[0] = delta[0];
        slope_[n - 1] = delta[n - 2];
        for (std::size_t k = 1; k + 1 < n; ++k) {
            slope_[k] = (delta[k - 1] * delta[k] <= 0.0) ? 0.0 : 0.5 * (delta[k - 1] + delta[k]);
        }
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (delta[k] == 0.0) {
                slope_[k] = 0.0;
                slope_[k + 1] = 0.0;
                continue;
            }
            const double a = slope_[k] / delta[k];
            const double b = slope_[k + 1] / delta[k];
            const double r = a * a + b * b;
            if (r > 9.0) {
                const double tau = 3.0 / std::sqrt(r);
                slope_[k] = tau * a * delta[k];
                slope_[k + 1] = tau * b * delta[k];
            }
        }
    }

    std::vector<double> t_;
    std::vector<double> omega_;
    std::vector<double> slope_;
};

} // namespace profile

using FrequencyProfile = std::variant<profile::Constant, profile::SuddenJump, profile::PaulTrap,
                                      profile::ParametricResonance, profile::Tabulated>;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline const char* kind_name(const FrequencyProfile& p)
{
    return std::visit(overloaded{
                          [](const profile::Constant&) { return "constant"; },
                          [](const profile::SuddenJump&) { return "sudden_jump"; },
                          [](const profile::PaulTrap&) { return "paul_trap"; },
                          [](const profile::ParametricResonance&) { return "parametric_resonance"; },
                          [](const profile::Tabulated&) { return "tabulated"; },
                      },
                      p);
}

/// Throws ParameterError when the profile violates its invariants.
inline void validate(const FrequencyProfile& p)
{
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    std::visit(overloaded{
                   [&](const profile::Constant& c) {
                       if (!positive(c.omega0)) throw ParameterError("constant: omega0 must be > 0");
                   },
                   [&](const profile::SuddenJump& s) {
                       if (!positive(s.omega0) || !positive(s.omega1)) {
                           throw ParameterError("sudden_jump: omega0 and omega1 must be > 0");
                       }
                   },
                   [&](const profile::PaulTrap& pt) {
                       if (!positive(pt.omega0) || !positive(pt.tau)) {
                           throw ParameterError("paul_trap: omega0 and tau must be > 0");
                       }
                       if (!(pt.gamma > 0.0) || !(pt.beta > pt.gamma) || !std::isfinite(pt.beta)) {
                           throw ParameterError("paul_trap: requires beta > gamma > 0");
                       }
                   },
                   [&](const profile::ParametricResonance& pr) {
                       if (!positive(pr.Omega0)) throw ParameterError("parametric_resonance: Omega0 must be > 0");
                       if (!(pr.h > 0.0 && pr.h < 1.0)) {
                           throw ParameterError("parametric_resonance: requires 0 < h < 1");
                       }
                       if (!(std::abs(pr.eps) < pr.h * pr.Omega0 / 2.0)) {
                           throw ParameterError("parametric_resonance: requires |eps| < h*Omega0/2");
                       }
                   },
                   [&](const profile::Tabulated& tb) {
                       if (tb.times().size() < 2) throw ParameterError("tabulated: needs >= 2 samples");
                   },
               },
               p);
}

/// Phase of the Paul-trap drive reduced to [0, tau).
inline double paul_phase(const profile::PaulTrap& p, double t)
{
    double r = std::fmod(t, p.tau);
    if (r < 0.0) r += p.tau;
    return r;
}

inline double omega_sq_at(const FrequencyProfile& p, double t)
{
    return std::visit(
        overloaded{
            [](const profile::Constant& c) { return c.omega0 * c.omega0; },
            [t](const profile::SuddenJump& s) { return t < 0.0 ? s.omega0 * s.omega0 : s.omega1 * s.omega1; },
            [t](const profile::PaulTrap& pt) {
                const double c = std::cos(2.0 * std::numbers::pi * paul_phase(pt, t) / pt.tau);
                return pt.omega0 * pt.omega0 * (pt.beta + pt.gamma * c) / (pt.beta + pt.gamma);
            },
            [t](const profile::ParametricResonance& pr) {
                return pr.Omega0 * pr.Omega0 * (1.0 + pr.h * std::cos((2.0 * pr.Omega0 + pr.eps) * t));
            },
            [t](const profile::Tabulated& tb) {
                const double w = tb(t);
                return w * w;
            },
        },
        p);
}

inline double omega_at(const FrequencyProfile& p, double t)
{
    return std::visit(overloaded{
                          [](const profile::Constant& c) { return c.omega0; },
                          [t](const profile::SuddenJump& s) { return t < 0.0 ? s.omega0 : s.omega1; },
                          [t](const profile::Tabulated& tb) { return tb(t); },
                          [&p, t](const auto&) { return std::sqrt(omega_sq_at(p, t)); },
                      },
                      p);
}

/// Frequency just before t = 0; this is the frequency of the static ground
/// configuration the oscillator starts in.
inline double initial_omega(const FrequencyProfile& p)
{
    if (const auto* s = std::get_if<profile::SuddenJump>(&p)) return s->omega0;
    return omega_at(p, 0.0);
}

/// Upper bound of omega(t) over [t0, t1].
inline double max_omega(const FrequencyProfile& p, double t0, double t1)
{
    return std::visit(
        overloaded{
            [](const profile::Constant& c) { return c.omega0; },
            [t0, t1](const profile::SuddenJump& s) {
                double m = 0.0;
                if (t0 < 0.0) m = std::max(m, s.omega0);
                if (t1 >= 0.0) m = std::max(m, s.omega1);
                return m;
            },
            [](const profile::PaulTrap& pt) { return pt.omega0; },
            [](const profile::ParametricResonance& pr) { return pr.Omega0 * std::sqrt(1.0 + pr.h); },
            [t0, t1](const profile::Tabulated& tb) {
                // Fritsch-Carlson keeps each segment within its end values.
                double m = 0.0;
                const auto& ts = tb.times();
                const auto& ws = tb.omegas();
                for (std::size_t i = 0; i < ts.size(); ++i) {
                    const bool left_in = i + 1 < ts.size() && ts[i + 1] >= t0;
                    const bool right_in = i > 0 && ts[i - 1] <= t1;
                    if ((ts[i] >= t0 && ts[i] <= t1) || left_in || right_in) m = std::max(m, ws[i]);
                }
                return m;
            },
        },
        p);
}

/// Points in the open interval (t0, t1) where omega(t) is not smooth; ODE
/// integrators stop exactly on them.
inline std::vector<double> breakpoints(const FrequencyProfile& p, double t0, double t1)
{
    std::vector<double> out;
    if (std::holds_alternative<profile::SuddenJump>(p)) {
        if (t0 < 0.0 && t1 > 0.0) out.push_back(0.0);
    } else if (const auto* tb = std::get_if<profile::Tabulated>(&p)) {
        for (double t : tb->times()) {
            if (t > t0 && t < t1) out.push_back(t);
        }
    }
    return out;
}

/// Throws DomainError if [t0, t1] is not inside the profile domain.
inline void check_domain(const FrequencyProfile& p, double t0, double t1)
{
    if (const auto* tb = std::get_if<profile::Tabulated>(&p)) {
        if (t0 < tb->t_min() || t1 > tb->t_max()) {
            throw DomainError("interval outside tabulated profile domain");
        }
    }
}

} // namespace tdho
