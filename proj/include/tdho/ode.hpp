#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "tdho/errors.hpp"

namespace tdho::ode {

template <std::size_t N>
using State = std::array<double, N>;

struct Options {
    double rtol = 1e-10;
    double atol = 1e-12;
    double initial_step = 0.0; ///< 0 selects a step from the RHS scale
    double max_step = 0.0;     ///< 0 means unbounded
    std::size_t max_steps = 2'000'000;
};

/// Continuous extension of one accepted Dormand-Prince step.
template <std::size_t N>
struct DenseSegment {
    double t0 = 0.0;
    double h = 0.0;
    std::array<State<N>, 5> coeff{};

    State<N> operator()(double t) const
    {
        const double s = (t - t0) / h;
        const double s1 = 1.0 - s;
        State<N> y{};
        for (std::size_t i = 0; i < N; ++i) {
            y[i] = coeff[0][i] +
                   s * (coeff[1][i] + s1 * (coeff[2][i] + s * (coeff[3][i] + s1 * coeff[4][i])));
        }
        return y;
    }
};

/// Solution of an ODE on [t_begin, t_end] with dense output built from the
/// integrator's own interpolant. Immutable once returned by integrate().
template <std::size_t N>
class Trajectory {
public:
    double t_begin() const noexcept { return segments_.empty() ? t_begin_ : segments_.front().t0; }
    double t_end() const noexcept { return t_end_; }
    std::size_t steps() const noexcept { return segments_.size(); }
    const std::vector<DenseSegment<N>>& segments() const noexcept { return segments_; }

    bool contains(double t) const noexcept { return t >= t_begin() && t <= t_end(); }

    State<N> operator()(double t) const
    {
        if (!contains(t)) {
            throw DomainError("time " + std::to_string(t) + " outside trajectory span [" +
                              std::to_string(t_begin()) + ", " + std::to_string(t_end()) + "]");
        }
        if (segments_.empty()) return y_begin_;
        if (t == t_end_) return y_end_;
        auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                                   [](double v, const DenseSegment<N>& s) { return v < s.t0; });
        if (it != segments_.begin()) --it;
        return (*it)(t);
    }

    const State<N>& final_state() const noexcept { return y_end_; }

private:
    template <std::size_t M, class Rhs>
    friend Trajectory<M> integrate(Rhs&&, double, const State<M>&, double, const Options&,
                                   std::span<const double>);

    double t_begin_ = 0.0;
    double t_end_ = 0.0;
    State<N> y_begin_{};
    State<N> y_end_{};
    std::vector<DenseSegment<N>> segments_;
};

namespace detail {

// Dormand-Prince 5(4) tableau with Shampine's dense output coefficients.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                        a75 = -2187.0 / 6784, a76 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
inline constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

template <std::size_t N>
bool all_finite(const State<N>& y)
{
    return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

} // namespace detail

/// Adaptive Dormand-Prince 5(4) integration of y' = rhs(t, y) from t0 to t1
/// (t1 > t0). The integrator lands exactly on every breakpoint in (t0, t1).
/// A right-hand side returning non-finite values rejects the trial step.
template <std::size_t N, class Rhs>
Trajectory<N> integrate(Rhs&& rhs, double t0, const State<N>& y0, double t1, const Options& opt,
                        std::span<const double> breaks = {})
{
    using namespace detail;
    if (!(t1 > t0)) throw DomainError("integrate: requires t1 > t0");
    if (!(opt.rtol > 0.0) || !(opt.atol >= 0.0)) throw ParameterError("integrate: bad tolerances");

    Trajectory<N> traj;
    traj.t_begin_ = t0;
    traj.y_begin_ = y0;

    std::vector<double> stops;
    for (double b : breaks) {
        if (b > t0 && b < t1) stops.push_back(b);
    }
    std::sort(stops.begin(), stops.end());
    stops.push_back(t1);

    auto scale = [&](const State<N>& a, const State<N>& b, std::size_t i) {
        return opt.atol + opt.rtol * std::max(std::abs(a[i]), std::abs(b[i]));
    };

    double t = t0;
    State<N> y = y0;
    State<N> k1 = rhs(t, y);
    if (!all_finite(k1)) throw NumericError("integrate: non-finite derivative at initial point");

    double h = opt.initial_step;
    if (h <= 0.0) {
        double d0 = 0.0, d1n = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = opt.atol + opt.rtol * std::abs(y[i]);
            d0 += (y[i] / sc) * (y[i] / sc);
            d1n += (k1[i] / sc) * (k1[i] / sc);
        }
        d0 = std::sqrt(d0 / N);
        d1n = std::sqrt(d1n / N);
        h = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
        h = std::min(h, (t1 - t0));
    }
    if (opt.max_step > 0.0) h = std::min(h, opt.max_step);

    std::size_t stop_idx = 0;
    std::size_t n_steps = 0;
    bool last_rejected = false;

    while (stop_idx < stops.size()) {
        const double target = stops[stop_idx];
        if (++n_steps > opt.max_steps) {
            throw ConvergenceError("integrate: step budget exhausted at t = " + std::to_string(t));
        }
        bool hits_target = false;
        if (t + h >= target || (target - t - h) < 1e-12 * std::abs(target)) {
            h = target - t;
            hits_target = true;
        }
        if (h <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
            throw ConvergenceError("integrate: step size underflow at t = " + std::to_string(t));
        }

        State<N> yt{}, k2, k3, k4, k5, k6, k7, y1;
        for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * a21 * k1[i];
        k2 = rhs(t + c2 * h, yt);
        for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        k3 = rhs(t + c3 * h, yt);
        for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        k4 = rhs(t + c4 * h, yt);
        for (std::size_t i = 0; i < N; ++i) {
            yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        }
        k5 = rhs(t + c5 * h, yt);
        for (std::size_t i = 0; i < N; ++i) {
            yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        }
        // The last stage sits on the step end; evaluate it just inside the
        // step so a breakpoint there belongs to the next step.
        k6 = rhs(hits_target ? std::nextafter(t + h, t) : t + h, yt);
        for (std::size_t i = 0; i < N; ++i) {
            y1[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
        }
        k7 = rhs(hits_target ? std::nextafter(t + h, t) : t + h, y1);

        const bool finite = all_finite(k2) && all_finite(k3) && all_finite(k4) && all_finite(k5) &&
                            all_finite(k6) && all_finite(k7) && all_finite(y1);
        double err = std::numeric_limits<double>::infinity();
        if (finite) {
            err = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                const double ei =
                    h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
                const double r = ei / scale(y, y1, i);
                err += r * r;
            }
            err = std::sqrt(err / N);
        }

        if (err <= 1.0) {
            DenseSegment<N> seg;
            seg.t0 = t;
            seg.h = h;
            for (std::size_t i = 0; i < N; ++i) {
                const double dy = y1[i] - y[i];
                const double bspl = h * k1[i] - dy;
                seg.coeff[0][i] = y[i];
                seg.coeff[1][i] = dy;
                seg.coeff[2][i] = bspl;
                seg.coeff[3][i] = dy - h * k7[i] - bspl;
                seg.coeff[4][i] =
                    h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
            }
            traj.segments_.push_back(seg);

            t = hits_target ? target : t + h;
            y = y1;
            if (hits_target) {
                ++stop_idx;
                // Right-hand side may be discontinuous here: restart FSAL.
                if (stop_idx < stops.size()) k1 = rhs(t, y);
            } else {
                k1 = k7;
            }
            double fac = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
            fac = std::clamp(fac, 0.2, last_rejected ? 1.0 : 5.0);
            const double h_used = h;
            h = h_used * fac;
            if (opt.max_step > 0.0) h = std::min(h, opt.max_step);
            last_rejected = false;
        } else {
            const double fac = std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.25;
            h *= fac;
            last_rejected = true;
        }
    }

    traj.t_end_ = t1;
    traj.y_end_ = y;
    return traj;
}

} // namespace tdho::ode
