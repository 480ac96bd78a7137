#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "tdho/errors.hpp"
#include "tdho/profiles.hpp"
#include "tdho/field.hpp"

// Crank-Nicolson reference propagator. It sees only omega(t); nothing here
// touches rho(t) or any other invariant-method quantity.

namespace tdho::oracle {

struct PropagationConfig {
    SpatialGrid grid;
    double dt = 1e-3;
    double t_end = 1.0;
    FrequencyProfile profile = profile::Constant{};
    OscillatorConstants constants;
};

/// Overlap <a|b> on the shared grid.
inline cplx overlap(const WaveField& a, const WaveField& b) { return inner_product(a, b); }

inline double norm_sq(const WaveField& f) { return overlap(f, f).real(); }

namespace detail {

/// Solves the complex tridiagonal system with constant off-diagonal `off`.
inline void thomas(std::vector<cplx>& diag, cplx off, std::vector<cplx>& rhs)
{
    const std::size_t n = diag.size();
    std::vector<cplx> c_prime(n);
    c_prime[0] = off / diag[0];
    rhs[0] /= diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        const cplx m = diag[i] - off * c_prime[i - 1];
        c_prime[i] = off / m;
        rhs[i] = (rhs[i] - off * rhs[i - 1]) / m;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c_prime[i] * rhs[i + 1];
    for (const auto& v : rhs) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw NumericError("Crank-Nicolson: tridiagonal solve produced non-finite values");
        }
    }
}

/// Advances psi from t0 to t1 in equal steps no longer than dt_max.
inline void advance(std::vector<cplx>& psi, double t0, double t1, double dt_max, const PropagationConfig& cfg)
{
    if (!(t1 > t0)) return;
    const auto steps = static_cast<std::size_t>(std::ceil((t1 - t0) / dt_max - 1e-9));
    const double dt = (t1 - t0) / static_cast<double>(steps);
    const auto& g = cfg.grid;
    const double dx = g.spacing();
    const double hbar = cfg.constants.hbar;
    const double m0 = cfg.constants.m0;
    const std::size_t n = psi.size();

    // H = -hbar^2/(2 m0) D2 + V, D2 the three-point Laplacian with Dirichlet edges.
    const double kin = hbar * hbar / (2.0 * m0 * dx * dx);
    const cplx a(0.0, dt / (2.0 * hbar)); // i dt / (2 hbar)
    const cplx off = -a * kin;            // off-diagonal of (1 + a H)
    std::vector<cplx> diag(n), rhs(n);
    for (std::size_t step = 0; step < steps; ++step) {
        const double t_mid = t0 + (static_cast<double>(step) + 0.5) * dt;
        const double w2 = omega_sq_at(cfg.profile, t_mid);
        for (std::size_t i = 0; i < n; ++i) {
            const double x = g.x(i);
            const double h_diag = 2.0 * kin + 0.5 * m0 * w2 * x * x;
            diag[i] = 1.0 + a * h_diag;
            // (1 - a H) psi
            cplx hpsi = h_diag * psi[i];
            if (i > 0) hpsi -= kin * psi[i - 1];
            if (i + 1 < n) hpsi -= kin * psi[i + 1];
            rhs[i] = psi[i] - a * hpsi;
        }
        thomas(diag, off, rhs);
        psi.swap(rhs);
    }
}

} // namespace detail

/// Throws ParameterError when the config or the initial state breaks the
/// propagator's preconditions.
inline void check_config(const WaveField& initial, const PropagationConfig& cfg)
{
    cfg.constants.validate();
    validate(cfg.profile);
    cfg.grid.validate();
    if (!(initial.grid == cfg.grid)) throw UsageError("initial state is not sampled on the config grid");
    if (!(cfg.t_end > initial.t)) throw ParameterError("propagate: t_end must exceed the initial time");
    check_domain(cfg.profile, initial.t, cfg.t_end);
    const double w_max = max_omega(cfg.profile, initial.t, cfg.t_end);
    if (!(cfg.dt > 0.0) || cfg.dt > 0.01 / w_max * (1.0 + 1e-12)) {
        throw ParameterError("propagate: dt must satisfy 0 < dt <= 0.01 / max omega");
    }
    const double nrm = norm_sq(initial);
    if (std::abs(nrm - 1.0) > 1e-6) throw ParameterError("propagate: initial state is not normalised");
    // Coverage: the grid must extend at least 4 standard deviations on each side.
    const auto& g = cfg.grid;
    std::vector<cplx> xw(initial.values.size()), x2w(initial.values.size());
    for (std::size_t i = 0; i < xw.size(); ++i) {
        const double p = std::norm(initial.values[i]);
        xw[i] = g.x(i) * p;
        x2w[i] = g.x(i) * g.x(i) * p;
    }
    const double mean = grid_ops::integrate(xw, g.spacing()).real() / nrm;
    const double var = grid_ops::integrate(x2w, g.spacing()).real() / nrm - mean * mean;
    const double sigma = std::sqrt(std::max(var, 0.0));
    if (g.x_max - mean < 4.0 * sigma || mean - g.x_min < 4.0 * sigma) {
        throw ParameterError("propagate: grid covers less than 8 standard deviations of the initial state");
    }
}

/// Propagates `initial` to each requested time (sorted, within
/// (initial.t, t_end]) and to t_end; returns one snapshot per stop, the last
/// being t_end. A sudden-jump discontinuity always falls on a step boundary.
inline std::vector<WaveField> propagate(const WaveField& initial, const PropagationConfig& cfg,
                                        std::vector<double> snapshot_times = {})
{
    check_config(initial, cfg);
    std::vector<double> stops;
    for (double t : snapshot_times) {
        if (t > initial.t && t < cfg.t_end) stops.push_back(t);
    }
    stops.push_back(cfg.t_end);
    std::sort(stops.begin(), stops.end());
    stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

    std::vector<double> jumps;
    if (std::holds_alternative<profile::SuddenJump>(cfg.profile) && initial.t < 0.0 && cfg.t_end > 0.0) {
        jumps.push_back(0.0);
    }

    std::vector<WaveField> out;
    std::vector<cplx> psi = initial.values;
    double t = initial.t;
    for (double stop : stops) {
        for (double j : jumps) {
            if (j > t && j < stop) {
                detail::advance(psi, t, j, cfg.dt, cfg);
                t = j;
            }
        }
        detail::advance(psi, t, stop, cfg.dt, cfg);
        t = stop;
        if (std::find(snapshot_times.begin(), snapshot_times.end(), stop) != snapshot_times.end() ||
            stop == cfg.t_end) {
            out.push_back(WaveField{cfg.grid, initial.n, stop, psi});
        }
    }
    return out;
}

} // namespace tdho::oracle
