#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>

#include "tdho/errors.hpp"

namespace tdho::quad {

/// Pairwise (cascade) summation; the result does not depend on how callers
/// split the data, only on its order.
template <class T>
T pairwise_sum(std::span<const T> v)
{
    if (v.size() <= 16) {
        T s{};
        for (const auto& x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

namespace detail {

// Gauss-Kronrod 7-15 nodes on [-1, 1] (positive half, centre last).
inline constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
std::pair<double, double> gk15(F& f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double hl = 0.5 * (b - a);
    const double fc = f(c);
    double kron = fc * wgk[7];
    double gauss = fc * wg[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = hl * xgk[j];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        kron += wgk[j] * (f1 + f2);
        if (j % 2 == 1) gauss += wg[j / 2] * (f1 + f2);
    }
    return {kron * hl, std::abs((kron - gauss) * hl)};
}

template <class F>
double adaptive(F& f, double a, double b, double whole, double err, double tol, int depth)
{
    if (err <= tol || depth <= 0) {
        if (err > tol && depth <= 0) {
            throw ConvergenceError("adaptive quadrature: recursion limit reached");
        }
        return whole;
    }
    const double m = 0.5 * (a + b);
    auto [l, le] = gk15(f, a, m);
    auto [r, re] = gk15(f, m, b);
    return adaptive(f, a, m, l, le, 0.5 * tol, depth - 1) +
           adaptive(f, m, b, r, re, 0.5 * tol, depth - 1);
}

} // namespace detail

/// Adaptive Gauss-Kronrod 7-15 integration of f over [a, b] to absolute
/// accuracy abs_tol (estimated from the embedded Gauss rule).
template <class F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-12, int max_depth = 40)
{
    if (a == b) return 0.0;
    if (b < a) return -integrate(f, b, a, abs_tol, max_depth);
    auto [whole, err] = detail::gk15(f, a, b);
    return detail::adaptive(f, a, b, whole, err, abs_tol, max_depth);
}

} // namespace tdho::quad
