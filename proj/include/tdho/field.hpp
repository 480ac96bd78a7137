#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "tdho/errors.hpp"
#include "tdho/quadrature.hpp"

namespace tdho {

using cplx = std::complex<double>;

/// Uniformly spaced positions x_min, ..., x_max (count samples, count >= 16).
struct SpatialGrid {
    double x_min = -10.0;
    double x_max = 10.0;
    std::size_t count = 2048;

    SpatialGrid() = default;
    SpatialGrid(double lo, double hi, std::size_t n) : x_min(lo), x_max(hi), count(n) { validate(); }

    void validate() const
    {
        if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
            throw ParameterError("spatial grid requires finite x_max > x_min");
        }
        if (count < 16) throw ParameterError("spatial grid requires at least 16 points");
    }

    double spacing() const noexcept { return (x_max - x_min) / static_cast<double>(count - 1); }
    double x(std::size_t i) const noexcept { return x_min + static_cast<double>(i) * spacing(); }

    bool operator==(const SpatialGrid&) const = default;
};

/// Complex samples of Psi_n(x, t) on a grid.
struct WaveField {
    SpatialGrid grid;
    int n = 0;
    double t = 0.0;
    std::vector<cplx> values;
};

namespace grid_ops {

inline void require_same_grid(const WaveField& a, const WaveField& b)
{
    if (!(a.grid == b.grid) || a.values.size() != b.values.size()) {
        throw UsageError("wave fields live on different grids");
    }
}

/// Trapezoid rule with pairwise summation.
inline cplx integrate(std::span<const cplx> f, double dx)
{
    std::vector<cplx> w(f.begin(), f.end());
    if (!w.empty()) {
        w.front() *= 0.5;
        w.back() *= 0.5;
    }
    return quad::pairwise_sum<cplx>(w) * dx;
}

inline cplx inner(const WaveField& a, std::span<const cplx> b)
{
    std::vector<cplx> prod(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) prod[i] = std::conj(a.values[i]) * b[i];
    return integrate(prod, a.grid.spacing());
}

} // namespace grid_ops

/// <a|b> by trapezoidal quadrature.
inline cplx inner_product(const WaveField& a, const WaveField& b)
{
    grid_ops::require_same_grid(a, b);
    return grid_ops::inner(a, b.values);
}

} // namespace tdho
