#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <variant>

#include "tdho/classical.hpp"
#include "tdho/errors.hpp"
#include "tdho/mathieu.hpp"
#include "tdho/ode.hpp"
#include "tdho/profiles.hpp"
#include "tdho/quadrature.hpp"

namespace tdho {

/// rho(t) and its time derivative.
struct RhoSample {
    double rho = 0.0;
    double rhodot = 0.0;
};

enum class EPMethod { direct, pinney, closed_form };

inline const char* method_name(EPMethod m)
{
    switch (m) {
    case EPMethod::direct: return "direct";
    case EPMethod::pinney: return "pinney";
    case EPMethod::closed_form: return "closed_form";
    }
    return "unknown";
}

/// A, B, C in rho^2 = A u^2 + B v^2 + 2 C u v.
struct PinneyConstants {
    double A = 0.0;
    double B = 0.0;
    double C = 0.0;
};

/// rho0 = 1 / sqrt(m0 omega0)
inline double rho_static(const OscillatorConstants& c) { return 1.0 / std::sqrt(c.m0 * c.omega0); }

/// Static ground configuration for the frequency the profile starts from.
inline RhoSample default_initial(const FrequencyProfile& p, const OscillatorConstants& c)
{
    return {1.0 / std::sqrt(c.m0 * initial_omega(p)), 0.0};
}

/// Constants matching rho(t0), rhodot(t0) for the standard pair produced by
/// solve_homogeneous (u = 1, v = 0, u' = 0, v' = 1 at t0, W = 1).
inline PinneyConstants pinney_constants_for(RhoSample init, double m0)
{
    if (!(init.rho > 0.0)) throw DomainError("pinney constants: rho(t0) must be > 0");
    const double A = init.rho * init.rho;
    const double C = init.rho * init.rhodot;
    const double B = (1.0 / (m0 * m0) + C * C) / A;
    return {A, B, C};
}

/// rho = sqrt(A u^2 + B v^2 + 2 C u v) and its derivative from a mode sample.
inline RhoSample pinney_compose(const classical::ModeSample& s, const PinneyConstants& k, double m0,
                                double wronskian)
{
    const double target = 1.0 / (m0 * m0 * wronskian * wronskian);
    const double det = k.A * k.B - k.C * k.C;
    if (!(std::abs(det - target) <= 1e-12 * std::abs(target))) {
        throw ConstantsError("Pinney constants violate AB - C^2 = 1/(m0 W)^2");
    }
    const double radicand = k.A * s.u * s.u + k.B * s.v * s.v + 2.0 * k.C * s.u * s.v;
    if (!(radicand > 0.0)) throw DomainError("Pinney composition: non-positive radicand");
    const double rho = std::sqrt(radicand);
    const double rho_rhodot = k.A * s.u * s.udot + k.B * s.v * s.vdot + k.C * (s.u * s.vdot + s.udot * s.v);
    return {rho, rho_rhodot / rho};
}

inline RhoSample pinney_compose(const classical::ModePair& pair, const PinneyConstants& k,
                                const OscillatorConstants& c, double t)
{
    return pinney_compose(pair(t), k, c.m0, pair.wronskian0());
}

/// Closed form for a jump omega0 -> omega1 at t = 0 starting from the
/// omega0 ground configuration; valid for t >= 0.
inline RhoSample rho_sudden_jump(double t, double omega0, double omega1, double m0)
{
    if (t < 0.0) throw DomainError("rho_sudden_jump: requires t >= 0");
    const double s = std::sin(omega1 * t);
    const double c = std::cos(omega1 * t);
    const double sin_coef = omega0 / (m0 * omega1 * omega1);
    const double cos_coef = 1.0 / (m0 * omega0);
    const double rho = std::sqrt(sin_coef * s * s + cos_coef * c * c);
    // d/dt rho^2 = 2 omega1 s c (sin_coef - cos_coef)
    const double rhodot = omega1 * s * c * (sin_coef - cos_coef) / rho;
    return {rho, rhodot};
}

inline mathieu::MathieuParams paul_trap_mathieu_params(const profile::PaulTrap& p)
{
    const double w2t2 = p.omega0 * p.omega0 * p.tau * p.tau;
    const double pi2 = std::numbers::pi * std::numbers::pi;
    return {p.beta * w2t2 / (pi2 * (p.beta + p.gamma)), -p.gamma * w2t2 / (2.0 * pi2 * (p.beta + p.gamma))};
}

/// Closed form for the Paul trap in terms of the even/odd Mathieu solutions,
/// normalised by their values at the origin.
inline RhoSample rho_paul_trap(double t, const profile::PaulTrap& p, double m0)
{
    const auto params = paul_trap_mathieu_params(p);
    const double x = std::numbers::pi * t / p.tau;
    const double dxdt = std::numbers::pi / p.tau;
    const auto mc = mathieu::mathieu_even(params, x);
    const auto ms = mathieu::mathieu_odd(params, x);
    const double mc0 = mathieu::mathieu_even(params, 0.0).value;
    const double ms0_prime = mathieu::mathieu_odd(params, 0.0).derivative;

    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double even_coef = 1.0 / (m0 * p.omega0 * mc0 * mc0);
    const double odd_coef = p.omega0 * p.tau * p.tau / (pi2 * m0 * ms0_prime * ms0_prime);
    const double rho2 = even_coef * mc.value * mc.value + odd_coef * ms.value * ms.value;
    const double rho = std::sqrt(rho2);
    const double half_d_rho2 =
        dxdt * (even_coef * mc.value * mc.derivative + odd_coef * ms.value * ms.derivative);
    return {rho, half_d_rho2 / rho};
}

/// Sampled Ermakov-Pinney solution rho(t) on [t_begin, t_end].
class EPSolution {
public:
    struct Direct {
        ode::Trajectory<2> traj;
    };
    struct Pinney {
        classical::ModePair pair;
        PinneyConstants k;
    };
    struct Static {
        double rho0;
    };
    struct Jump {
        profile::SuddenJump jump;
    };
    struct Paul {
        profile::PaulTrap trap;
    };
    using Source = std::variant<Direct, Pinney, Static, Jump, Paul>;

    EPSolution(OscillatorConstants c, FrequencyProfile p, EPMethod m, double t0, double t1, Source src)
        : constants_(c), profile_(std::move(p)), method_(m), t0_(t0), t1_(t1), source_(std::move(src))
    {
    }

    const OscillatorConstants& constants() const noexcept { return constants_; }
    const FrequencyProfile& profile() const noexcept { return profile_; }
    EPMethod method() const noexcept { return method_; }
    double t_begin() const noexcept { return t0_; }
    double t_end() const noexcept { return t1_; }
    bool contains(double t) const noexcept { return t >= t0_ && t <= t1_; }

    RhoSample operator()(double t) const
    {
        if (!contains(t)) {
            throw DomainError("time " + std::to_string(t) + " outside EP solution span [" +
                              std::to_string(t0_) + ", " + std::to_string(t1_) + "]");
        }
        const double m0 = constants_.m0;
        return std::visit(overloaded{
                              [t](const Direct& d) {
                                  const auto y = d.traj(t);
                                  return RhoSample{y[0], y[1]};
                              },
                              [t, m0](const Pinney& p) {
                                  return pinney_compose(p.pair(t), p.k, m0, p.pair.wronskian0());
                              },
                              [](const Static& s) { return RhoSample{s.rho0, 0.0}; },
                              [t, m0](const Jump& j) {
                                  return rho_sudden_jump(t, j.jump.omega0, j.jump.omega1, m0);
                              },
                              [t, m0](const Paul& p) { return rho_paul_trap(t, p.trap, m0); },
                          },
                          source_);
    }

    double omega(double t) const { return omega_at(profile_, t); }
    double omega_sq(double t) const { return omega_sq_at(profile_, t); }

    /// rho'' eliminated through the Ermakov-Pinney equation.
    double rho_ddot(double t) const
    {
        const auto s = (*this)(t);
        const double m0 = constants_.m0;
        return -omega_sq(t) * s.rho + 1.0 / (m0 * m0 * s.rho * s.rho * s.rho);
    }

private:
    OscillatorConstants constants_;
    FrequencyProfile profile_;
    EPMethod method_;
    double t0_;
    double t1_;
    Source source_;
};

/// Direct integration of rho'' + omega^2 rho = 1/(m0^2 rho^3) from t = 0.
inline EPSolution solve_ep(const FrequencyProfile& profile, const OscillatorConstants& c, RhoSample init,
                           double t1, double tol)
{
    c.validate();
    validate(profile);
    classical::check_tolerance(tol);
    if (!(init.rho > 0.0) || !std::isfinite(init.rhodot)) {
        throw DomainError("solve_ep: initial rho must be > 0");
    }
    if (!(t1 > 0.0)) throw DomainError("solve_ep: requires t1 > 0");
    check_domain(profile, 0.0, t1);

    const double inv_m2 = 1.0 / (c.m0 * c.m0);
    bool hit_zero = false;
    auto rhs = [&profile, inv_m2, &hit_zero](double t, const ode::State<2>& y) {
        if (!(y[0] > 0.0)) {
            hit_zero = true;
            return ode::State<2>{NAN, NAN};
        }
        const double r3 = y[0] * y[0] * y[0];
        return ode::State<2>{y[1], -omega_sq_at(profile, t) * y[0] + inv_m2 / r3};
    };
    ode::Options opt;
    opt.rtol = tol;
    opt.atol = tol * 1e-2 * init.rho;
    const auto breaks = breakpoints(profile, 0.0, t1);
    try {
        auto traj = ode::integrate<2>(rhs, 0.0, ode::State<2>{init.rho, init.rhodot}, t1, opt, breaks);
        for (const auto& seg : traj.segments()) {
            if (!(seg.coeff[0][0] > 0.0)) throw SingularityError("solve_ep: rho reached zero");
        }
        return EPSolution(c, profile, EPMethod::direct, 0.0, t1, EPSolution::Direct{std::move(traj)});
    } catch (const ConvergenceError& e) {
        if (hit_zero) throw SingularityError(std::string("solve_ep: amplitude collapse (") + e.what() + ")");
        throw;
    }
}

inline EPSolution solve_ep(const FrequencyProfile& profile, const OscillatorConstants& c, double t1, double tol)
{
    return solve_ep(profile, c, default_initial(profile, c), t1, tol);
}

/// rho from two homogeneous solutions started at t = 0.
inline EPSolution pinney_solution(const FrequencyProfile& profile, const OscillatorConstants& c, RhoSample init,
                                  double t1, double tol)
{
    c.validate();
    auto pair = classical::solve_homogeneous(profile, 0.0, t1, tol);
    const auto k = pinney_constants_for(init, c.m0);
    return EPSolution(c, profile, EPMethod::pinney, 0.0, t1, EPSolution::Pinney{std::move(pair), k});
}

inline EPSolution pinney_solution(const FrequencyProfile& profile, const OscillatorConstants& c, double t1,
                                  double tol)
{
    return pinney_solution(profile, c, default_initial(profile, c), t1, tol);
}

/// Closed forms exist for the constant, sudden-jump and Paul-trap profiles,
/// always with the default (static ground) initial conditions.
inline bool has_closed_form(const FrequencyProfile& p)
{
    return std::holds_alternative<profile::Constant>(p) || std::holds_alternative<profile::SuddenJump>(p) ||
           std::holds_alternative<profile::PaulTrap>(p);
}

inline EPSolution closed_form_solution(const FrequencyProfile& profile, const OscillatorConstants& c, double t1)
{
    c.validate();
    validate(profile);
    if (!(t1 > 0.0)) throw DomainError("closed_form_solution: requires t1 > 0");
    return std::visit(
        overloaded{
            [&](const profile::Constant& k) {
                return EPSolution(c, profile, EPMethod::closed_form, 0.0, t1,
                                  EPSolution::Static{1.0 / std::sqrt(c.m0 * k.omega0)});
            },
            [&](const profile::SuddenJump& j) {
                return EPSolution(c, profile, EPMethod::closed_form, 0.0, t1, EPSolution::Jump{j});
            },
            [&](const profile::PaulTrap& pt) {
                return EPSolution(c, profile, EPMethod::closed_form, 0.0, t1, EPSolution::Paul{pt});
            },
            [&](const auto&) -> EPSolution {
                throw ParameterError(std::string("no closed-form rho for profile kind ") + kind_name(profile));
            },
        },
        profile);
}

/// Integral of 1 / (m0 rho^2) over [0, t], by adaptive Gauss-Kronrod
/// quadrature on the solution's dense output.
inline double phase_integral(const EPSolution& ep, double t, double abs_tol = 1e-12)
{
    if (t < 0.0 || !ep.contains(t) || !ep.contains(0.0)) {
        throw DomainError("phase integral: t must lie in [0, t_end] of the EP solution");
    }
    const double m0 = ep.constants().m0;
    auto f = [&ep, m0](double s) {
        const double r = ep(s).rho;
        return 1.0 / (m0 * r * r);
    };
    // Panels of about one oscillation keep the adaptive tree shallow.
    const double scale = std::max(1.0, max_omega(ep.profile(), 0.0, t) * t / 2.0);
    const int panels = static_cast<int>(std::ceil(scale));
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double a = t * i / panels;
        const double b = (i + 1 == panels) ? t : t * (i + 1) / panels;
        total += quad::integrate(f, a, b, abs_tol / panels);
    }
    return total;
}

/// Coefficients of I = (eta1 x^2 + eta2 p^2 + eta3 {x, p}) / 2.
struct InvariantCoefficients {
    double eta1 = 0.0;
    double eta2 = 0.0;
    double eta3 = 0.0;
};

inline InvariantCoefficients invariant_coefficients(const EPSolution& ep, double t)
{
    const auto s = ep(t);
    const double m0 = ep.constants().m0;
    return {m0 * m0 * s.rhodot * s.rhodot + 1.0 / (s.rho * s.rho), s.rho * s.rho, -m0 * s.rho * s.rhodot};
}

} // namespace tdho
