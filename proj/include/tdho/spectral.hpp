#pragma once

#include <complex>
#include <cstddef>
#include <mutex>
#include <numbers>
#include <span>
#include <vector>

#include <fftw3.h>

#include "tdho/errors.hpp"

// Fourier-spectral derivatives on a uniform grid. The samples are treated as
// one period of length count * h; callers keep the amplitude at the edges
// negligible so the implied periodic extension is harmless.

namespace tdho::spectral {

using cplx = std::complex<double>;

namespace detail {

inline std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

inline void transform(std::vector<cplx>& data, int sign)
{
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    const int n = static_cast<int>(data.size());
    fftw_plan plan;
    {
        // FFTW's planner is not re-entrant; execution is.
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_1d(n, p, p, sign, FFTW_ESTIMATE);
    }
    if (plan == nullptr) throw NumericError("FFT plan creation failed");
    fftw_execute(plan);
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
}

/// Angular wavenumber of FFT bin k; the Nyquist bin of an even grid maps to 0
/// for odd-order derivatives.
inline double wavenumber(std::size_t k, std::size_t n, double h, bool odd_order)
{
    const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * h);
    if (2 * k == n) return odd_order ? 0.0 : static_cast<double>(k) * dk;
    const auto kk = static_cast<double>(k);
    return (2 * k < n ? kk : kk - static_cast<double>(n)) * dk;
}

inline std::vector<cplx> derivative(std::span<const cplx> f, double h, int order)
{
    const std::size_t n = f.size();
    std::vector<cplx> data(f.begin(), f.end());
    transform(data, FFTW_FORWARD);
    const bool odd = order % 2 != 0;
    const double norm = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double kw = wavenumber(k, n, h, odd);
        cplx factor = 1.0;
        for (int j = 0; j < order; ++j) factor *= cplx(0.0, kw);
        data[k] *= factor * norm;
    }
    transform(data, FFTW_BACKWARD);
    return data;
}

} // namespace detail

inline std::vector<cplx> d1(std::span<const cplx> f, double h) { return detail::derivative(f, h, 1); }

inline std::vector<cplx> d2(std::span<const cplx> f, double h) { return detail::derivative(f, h, 2); }

} // namespace tdho::spectral
