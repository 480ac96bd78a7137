#pragma once

#include <complex>

#include "tdho/ermakov.hpp"

namespace tdho::classical {

/// Heisenberg-picture mode k(t) = rho(t) exp(-i gamma(t)) with gamma(0) = 0
/// and gamma' = hbar / (2 m0 rho^2), which makes
/// k conj(k') - conj(k) k' = i hbar / m0. Works in units with hbar = 1.
inline std::complex<double> complex_mode(const EPSolution& ep, double t)
{
    const double rho = ep(t).rho;
    const double gamma = 0.5 * phase_integral(ep, t);
    return std::polar(rho, -gamma);
}

} // namespace tdho::classical
