#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "tdho/errors.hpp"
#include "tdho/ode.hpp"

namespace tdho::mathieu {

/// y'' + (a - 2 q cos 2x) y = 0
struct MathieuParams {
    double a = 0.0;
    double q = 0.0;

    auto operator<=>(const MathieuParams&) const = default;
};

struct ValueAndDerivative {
    double value = 0.0;
    double derivative = 0.0;
};

namespace detail {

inline constexpr double chunk_length = 20.0;
inline constexpr double rtol = 1e-13;
inline constexpr double atol = 1e-16;

/// Even and odd fundamental solutions on [0, X], stored in fixed-length
/// chunks each started from the end state of the previous one. Values at a
/// given x therefore never depend on how far the cache has grown.
class FundamentalSolutions {
public:
    explicit FundamentalSolutions(MathieuParams p) : params_(p) {}

    ode::State<4> at(double x)
    {
        const auto idx = static_cast<std::size_t>(x / chunk_length);
        std::lock_guard lock(mutex_);
        while (chunks_.size() <= idx) extend();
        return chunks_[idx](x);
    }

private:
    void extend()
    {
        const double x0 = chunk_length * static_cast<double>(chunks_.size());
        const ode::State<4> y0 =
            chunks_.empty() ? ode::State<4>{1.0, 0.0, 0.0, 1.0} : chunks_.back().final_state();
        const double a = params_.a;
        const double q = params_.q;
        auto rhs = [a, q](double x, const ode::State<4>& y) {
            const double k = a - 2.0 * q * std::cos(2.0 * x);
            return ode::State<4>{y[1], -k * y[0], y[3], -k * y[2]};
        };
        ode::Options opt;
        opt.rtol = rtol;
        opt.atol = atol;
        chunks_.push_back(ode::integrate<4>(rhs, x0, y0, x0 + chunk_length, opt));
    }

    MathieuParams params_;
    std::mutex mutex_;
    std::vector<ode::Trajectory<4>> chunks_;
};

class Cache {
public:
    std::shared_ptr<FundamentalSolutions> get(MathieuParams p)
    {
        if (!std::isfinite(p.a) || !std::isfinite(p.q)) {
            throw ParameterError("Mathieu parameters a, q must be finite");
        }
        std::lock_guard lock(mutex_);
        auto it = entries_.find(p);
        if (it == entries_.end()) {
            if (entries_.size() >= max_entries) entries_.clear();
            it = entries_.emplace(p, std::make_shared<FundamentalSolutions>(p)).first;
        }
        return it->second;
    }

private:
    static constexpr std::size_t max_entries = 256;
    std::mutex mutex_;
    std::map<MathieuParams, std::shared_ptr<FundamentalSolutions>> entries_;
};

inline Cache& cache()
{
    static Cache c;
    return c;
}

inline ode::State<4> evaluate(MathieuParams p, double x)
{
    if (!std::isfinite(x)) throw DomainError("Mathieu argument must be finite");
    try {
        return cache().get(p)->at(std::abs(x));
    } catch (const ConvergenceError&) {
        throw;
    } catch (const NumericError& e) {
        throw ConvergenceError(std::string("Mathieu integration failed: ") + e.what());
    }
}

} // namespace detail

/// Even solution: y(0) = 1, y'(0) = 0.
inline ValueAndDerivative mathieu_even(MathieuParams p, double x)
{
    const auto y = detail::evaluate(p, x);
    return {y[0], x < 0.0 ? -y[1] : y[1]};
}

/// Odd solution: y(0) = 0, y'(0) = 1.
inline ValueAndDerivative mathieu_odd(MathieuParams p, double x)
{
    const auto y = detail::evaluate(p, x);
    return {x < 0.0 ? -y[2] : y[2], y[3]};
}

} // namespace tdho::mathieu
