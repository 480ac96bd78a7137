#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "tdho/ermakov.hpp"
#include "tdho/errors.hpp"
#include "tdho/field.hpp"
#include "tdho/profiles.hpp"
#include "tdho/quadrature.hpp"
#include "tdho/spectral.hpp"

namespace tdho {

inline constexpr int max_hermite_order = 200;

/// Physicists' Hermite polynomial H_n(z).
inline double hermite(int n, double z)
{
    if (n < 0 || n > max_hermite_order) {
        throw DomainError("hermite: order must be in [0, " + std::to_string(max_hermite_order) + "]");
    }
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = 2.0 * z;
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * z * cur - 2.0 * k * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// log(2^n n!)
inline double log_hermite_norm(int n) { return n * std::numbers::ln2 + std::lgamma(n + 1.0); }

namespace detail {

/// H_n(z) / sqrt(2^n n!) through the normalised three-term recurrence, which
/// stays in range where H_n and 2^n n! separately overflow.
inline double hermite_scaled(int n, double z)
{
    if (n < 0 || n > max_hermite_order) {
        throw DomainError("hermite: order must be in [0, " + std::to_string(max_hermite_order) + "]");
    }
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = std::sqrt(2.0) * z;
    for (int k = 1; k < n; ++k) {
        const double next = std::sqrt(2.0 / (k + 1)) * z * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

inline void check_order(int n)
{
    if (n < 0 || n > max_hermite_order) throw DomainError("quantum number out of range");
}

} // namespace detail

/// Invariant eigenfunction Phi_n(x, t) built from rho(t), rhodot(t).
inline cplx phi_n(int n, double x, RhoSample s, const OscillatorConstants& c)
{
    detail::check_order(n);
    const double rho2 = s.rho * s.rho;
    const double amp = std::pow(1.0 / (std::numbers::pi * c.hbar * rho2), 0.25);
    const double x2 = x * x;
    const double decay = -x2 / (2.0 * c.hbar * rho2);
    const double chirp = c.m0 * s.rhodot * x2 / (2.0 * c.hbar * s.rho);
    const double z = x / (std::sqrt(c.hbar) * s.rho);
    return amp * std::exp(decay) * detail::hermite_scaled(n, z) * cplx(std::cos(chirp), std::sin(chirp));
}

inline cplx phi_n(int n, double x, const EPSolution& ep, double t, const OscillatorConstants& c)
{
    return phi_n(n, x, ep(t), c);
}

/// LR phase alpha_n(t) = -(n + 1/2) int_0^t dt' / (m0 rho^2).
inline double alpha_n(int n, const EPSolution& ep, double t)
{
    if (n < 0) throw DomainError("quantum number must be >= 0");
    return -(n + 0.5) * phase_integral(ep, t, 1e-12 / (n + 0.5));
}

inline WaveField psi_n(int n, const SpatialGrid& grid, const EPSolution& ep, double t, const OscillatorConstants& c)
{
    grid.validate();
    detail::check_order(n);
    const auto s = ep(t);
    const double alpha = alpha_n(n, ep, t);
    const cplx phase(std::cos(alpha), std::sin(alpha));
    WaveField f{grid, n, t, std::vector<cplx>(grid.count)};
    for (std::size_t i = 0; i < grid.count; ++i) f.values[i] = phase * phi_n(n, grid.x(i), s, c);
    return f;
}

/// Stationary-state wave function of the constant oscillator (m0, omega0).
inline WaveField psi_n_static(int n, const SpatialGrid& grid, double t, const OscillatorConstants& c)
{
    grid.validate();
    detail::check_order(n);
    const double mw_h = c.m0 * c.omega0 / c.hbar;
    const double log_amp = 0.25 * std::log(mw_h / std::numbers::pi) - 0.5 * log_hermite_norm(n);
    const double theta = -(n + 0.5) * c.omega0 * t;
    const cplx phase(std::cos(theta), std::sin(theta));
    WaveField f{grid, n, t, std::vector<cplx>(grid.count)};
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double x = grid.x(i);
        const double h = hermite(n, std::sqrt(mw_h) * x);
        f.values[i] = phase * (std::exp(log_amp - 0.5 * mw_h * x * x) * h);
    }
    return f;
}

/// Grid spanning +-10 max_t(sqrt(hbar) rho(t)) sqrt(n + 1) over the
/// solution's span, sampled at `probes` times.
inline SpatialGrid default_grid(const EPSolution& ep, int n, std::size_t count = 2048, std::size_t probes = 256)
{
    double rho_max = 0.0;
    for (std::size_t k = 0; k <= probes; ++k) {
        const double t = ep.t_begin() + (ep.t_end() - ep.t_begin()) * static_cast<double>(k) / probes;
        rho_max = std::max(rho_max, ep(t).rho);
    }
    const double half = 10.0 * std::sqrt(ep.constants().hbar) * rho_max * std::sqrt(n + 1.0);
    return SpatialGrid(-half, half, count);
}

/// Observables available to expectation().
enum class Observable { identity, x, x2, p, p2, hamiltonian, invariant };

/// Applies an observable to the samples of b; H and I use the field's time.
inline std::vector<cplx> apply(Observable op, const WaveField& b, const EPSolution& ep, const OscillatorConstants& c)
{
    const auto& g = b.grid;
    const double dx = g.spacing();
    const std::size_t n = b.values.size();
    std::vector<cplx> out(n);
    const cplx minus_i_hbar(0.0, -c.hbar);
    switch (op) {
    case Observable::identity: return b.values;
    case Observable::x:
        for (std::size_t i = 0; i < n; ++i) out[i] = g.x(i) * b.values[i];
        return out;
    case Observable::x2:
        for (std::size_t i = 0; i < n; ++i) out[i] = g.x(i) * g.x(i) * b.values[i];
        return out;
    case Observable::p: {
        out = spectral::d1(b.values, dx);
        for (auto& v : out) v *= minus_i_hbar;
        return out;
    }
    case Observable::p2: {
        out = spectral::d2(b.values, dx);
        for (auto& v : out) v *= -c.hbar * c.hbar;
        return out;
    }
    case Observable::hamiltonian: {
        const auto lap = spectral::d2(b.values, dx);
        const double w2 = ep.omega_sq(b.t);
        for (std::size_t i = 0; i < n; ++i) {
            const double x = g.x(i);
            out[i] = -c.hbar * c.hbar / (2.0 * c.m0) * lap[i] + 0.5 * c.m0 * w2 * x * x * b.values[i];
        }
        return out;
    }
    case Observable::invariant: {
        // I = 1/2 [x^2 / rho^2 + rho^2 p^2 - m0 rho rhodot {x, p} + m0^2 rhodot^2 x^2]
        const auto s = ep(b.t);
        const auto lap = spectral::d2(b.values, dx);
        const auto dpsi = spectral::d1(b.values, dx);
        std::vector<cplx> xpsi(n);
        for (std::size_t i = 0; i < n; ++i) xpsi[i] = g.x(i) * b.values[i];
        const auto dxpsi = spectral::d1(xpsi, dx);
        const double x2_coef = 1.0 / (s.rho * s.rho) + c.m0 * c.m0 * s.rhodot * s.rhodot;
        const double p2_coef = s.rho * s.rho;
        const double cross_coef = -c.m0 * s.rho * s.rhodot;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = g.x(i);
            const cplx p2 = -c.hbar * c.hbar * lap[i];
            const cplx anti = minus_i_hbar * (x * dpsi[i] + dxpsi[i]);
            out[i] = 0.5 * (x2_coef * x * x * b.values[i] + p2_coef * p2 + cross_coef * anti);
        }
        return out;
    }
    }
    return out;
}

/// <a| O |b> by quadrature over the shared grid.
inline cplx expectation(const WaveField& a, const WaveField& b, Observable op, const EPSolution& ep,
                        const OscillatorConstants& c)
{
    grid_ops::require_same_grid(a, b);
    if (a.t != b.t && (op == Observable::hamiltonian || op == Observable::invariant)) {
        throw UsageError("time-dependent observable needs both fields at the same time");
    }
    return grid_ops::inner(a, apply(op, b, ep, c));
}

} // namespace tdho
