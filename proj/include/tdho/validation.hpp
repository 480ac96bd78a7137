#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "tdho/ermakov.hpp"
#include "tdho/figures.hpp"
#include "tdho/mathieu.hpp"
#include "tdho/oracle.hpp"
#include "tdho/quadrature.hpp"
#include "tdho/squeezing.hpp"
#include "tdho/wavefunction.hpp"

// Acceptance checks shared by the `validate` subcommand and the acceptance
// test binary.

namespace tdho::validation {

enum class Level { fast, full };

struct Options {
    Level level = Level::fast;
    /// Multiplies every tolerance; values below 1 tighten the suite. A scale of
    /// zero is the corrupted-tolerance test hook.
    double tolerance_scale = 1.0;
    bool enforce_runtime = true;
};

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = true;
    bool skipped = false;
    double seconds = 0.0;
    double budget_seconds = 0.0;
    std::vector<std::string> details;
};

/// Collects "measured vs tolerance" comparisons for one check.
class Tally {
public:
    explicit Tally(double scale) : scale_(scale) {}

    /// Passes when measured <= tol * scale.
    void within(const std::string& what, double measured, double tol)
    {
        const double limit = tol * scale_;
        const bool ok = std::isfinite(measured) && measured <= limit;
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s: %.3e (limit %.1e)%s", what.c_str(), measured, limit, ok ? "" : " FAIL");
        details_.emplace_back(buf);
        passed_ = passed_ && ok;
    }

    void require(const std::string& what, bool ok)
    {
        details_.push_back(what + (ok ? ": ok" : ": FAIL"));
        passed_ = passed_ && ok;
    }

    void fail(const std::string& what)
    {
        details_.push_back(what + ": FAIL");
        passed_ = false;
    }

    bool passed() const noexcept { return passed_; }
    std::vector<std::string>& details() noexcept { return details_; }

private:
    double scale_;
    bool passed_ = true;
    std::vector<std::string> details_;
};

struct Check {
    int id;
    std::string name;
    double budget_seconds;
    bool full_only;
    std::function<void(Tally&)> body;
};

namespace detail {

inline constexpr std::array<double, 2> hbar_values{1.0, 2.0};

inline OscillatorConstants consts(double hbar, double omega0 = 1.0) { return OscillatorConstants{1.0, hbar, omega0}; }

inline std::string tag(double hbar) { return "hbar=" + std::to_string(static_cast<int>(hbar)); }

inline const profile::PaulTrap& reference_trap()
{
    static const profile::PaulTrap trap{1.0, 1.0, 0.5, 3.0};
    return trap;
}

inline void jump_persistence(Tally& t)
{
    const double exact = 2.0 * std::numbers::sqrt2 / 3.0;
    t.within("closed-form persistence |P - 2 sqrt(2)/3|", std::abs(sudden_jump_persistence(1.0, 2.0) - exact), 1e-12);
    for (double hbar : hbar_values) {
        const auto c = consts(hbar);
        const auto ep = solve_ep(profile::SuddenJump{1.0, 2.0}, c, 10.0, 1e-10);
        double err = 0.0;
        for (int k = 1; k <= 20; ++k) {
            const double tk = 0.5 * k;
            err = std::max(err, std::abs(persistence_prob(squeeze_state(ep, tk).r) - exact));
        }
        t.within("numeric persistence at 20 times, " + tag(hbar), err, 1e-6);
        const double p_half = sudden_jump_energy_probability(0.5 * hbar * 1.0, 1.0, 2.0, hbar);
        t.within("P(E = hbar omega0 / 2) after jump, " + tag(hbar), std::abs(p_half), 0.0);
    }
}

inline void static_reduction(Tally& t)
{
    for (double hbar : hbar_values) {
        for (double w0 : {1.0, 1.7}) {
            const auto c = consts(hbar, w0);
            const auto ep = closed_form_solution(profile::Constant{w0}, c, 10.0);
            const auto direct = solve_ep(profile::Constant{w0}, c, 10.0, 1e-10);
            double r_max = 0.0, r_direct = 0.0;
            bool phi_undefined = true;
            double alpha_err = 0.0;
            for (int k = 0; k <= 40; ++k) {
                const double tk = 0.25 * k;
                const auto st = squeeze_state(ep, tk);
                r_max = std::max(r_max, st.r);
                r_direct = std::max(r_direct, squeeze_state(direct, tk).r);
                phi_undefined = phi_undefined && !st.phi;
                for (int n = 0; n <= 5; ++n) {
                    alpha_err = std::max(alpha_err, std::abs(alpha_n(n, ep, tk) + (n + 0.5) * w0 * tk));
                    alpha_err = std::max(alpha_err, std::abs(alpha_n(n, direct, tk) + (n + 0.5) * w0 * tk));
                }
            }
            const std::string label = tag(hbar) + ", omega0=" + (w0 == 1.0 ? "1" : "1.7");
            t.within("max r, " + label, r_max, 1e-10);
            t.within("max r along direct integration, " + label, r_direct, 1e-10);
            t.require("phase undefined, " + label, phi_undefined);
            t.within("max |alpha_n + (n+1/2) omega0 t|, n<=5, " + label, alpha_err, 1e-9);

            double psi_err = 0.0;
            for (int n = 0; n <= 5; ++n) {
                const auto grid = default_grid(ep, n);
                for (double tk : {0.0, 2.5, 10.0}) {
                    const auto a = psi_n(n, grid, ep, tk, c);
                    const auto b = psi_n_static(n, grid, tk, c);
                    double scale = 0.0, diff = 0.0;
                    for (std::size_t i = 0; i < grid.count; ++i) {
                        scale = std::max(scale, std::abs(b.values[i]));
                        diff = std::max(diff, std::abs(a.values[i] - b.values[i]));
                    }
                    psi_err = std::max(psi_err, diff / scale);
                }
            }
            t.within("max |psi_n - psi_n_static| / max|psi|, " + label, psi_err, 1e-10);
        }
    }
}

struct NamedProfile {
    std::string name;
    FrequencyProfile profile;
    double t_end;
};

inline std::vector<NamedProfile> reference_profiles()
{
    return {{"constant", profile::Constant{1.0}, 10.0},
            {"sudden_jump", profile::SuddenJump{1.0, 2.0}, 10.0},
            {"paul_trap", reference_trap(), 5.0 * reference_trap().tau}};
}

inline void invariant_constancy(Tally& t)
{
    for (double hbar : hbar_values) {
        const auto c = consts(hbar);
        for (const auto& np : reference_profiles()) {
            const auto ep = solve_ep(np.profile, c, np.t_end, 1e-10);
            for (int n : {0, 1, 3}) {
                const auto grid = default_grid(ep, n);
                double err = 0.0;
                for (int k = 1; k <= 10; ++k) {
                    const double tk = np.t_end * k / 10.0;
                    const auto f = psi_n(n, grid, ep, tk, c);
                    const double inv = expectation(f, f, Observable::invariant, ep, c).real();
                    err = std::max(err, std::abs(inv - hbar * (n + 0.5)));
                }
                t.within("<I> - hbar(n+1/2), " + np.name + ", n=" + std::to_string(n) + ", " + tag(hbar), err, 1e-6);
            }
        }
    }
}

inline double max_rel_rho(const EPSolution& a, const EPSolution& b, double t_end, int samples)
{
    double err = 0.0;
    for (int k = 0; k <= samples; ++k) {
        const double tk = t_end * k / samples;
        const double ra = a(tk).rho;
        const double rb = b(tk).rho;
        err = std::max(err, std::abs(ra - rb) / std::abs(rb));
    }
    return err;
}

inline void method_triangle(Tally& t)
{
    const auto c = consts(1.0);
    const std::vector<NamedProfile> cases = {{"sudden_jump", profile::SuddenJump{1.0, 2.0}, 10.0},
                                             {"paul_trap", reference_trap(), 5.0 * reference_trap().tau}};
    for (const auto& np : cases) {
        const auto direct = solve_ep(np.profile, c, np.t_end, 1e-10);
        const auto pinney = pinney_solution(np.profile, c, np.t_end, 1e-10);
        const auto closed = closed_form_solution(np.profile, c, np.t_end);
        t.within("direct vs closed form, " + np.name, max_rel_rho(direct, closed, np.t_end, 400), 1e-6);
        t.within("pinney vs closed form, " + np.name, max_rel_rho(pinney, closed, np.t_end, 400), 1e-6);
        t.within("direct vs pinney, " + np.name, max_rel_rho(direct, pinney, np.t_end, 400), 1e-6);
    }
}

struct OracleRun {
    std::vector<double> deficits; ///< 1 - |<psi_CN|Psi_0>| per checkpoint
    std::vector<double> x2_rel;   ///< relative <x^2> mismatch per checkpoint
    std::vector<double> jump_p;   ///< |<new ground|psi_CN>|^2 per checkpoint (jump only)
};

inline OracleRun oracle_run(const NamedProfile& np, const OscillatorConstants& c, std::size_t count, double dt_factor)
{
    const auto ep = closed_form_solution(np.profile, c, np.t_end);
    const SpatialGrid grid(-10.0 * std::sqrt(c.hbar), 10.0 * std::sqrt(c.hbar), count);
    const double w_max = max_omega(np.profile, 0.0, np.t_end);
    oracle::PropagationConfig cfg{grid, dt_factor * 0.01 / w_max, np.t_end, np.profile, c};
    std::vector<double> checkpoints;
    for (int k = 1; k <= 5; ++k) checkpoints.push_back(np.t_end * k / 5.0);
    const auto initial = psi_n(0, grid, ep, 0.0, c);
    const auto snaps = oracle::propagate(initial, cfg, checkpoints);

    OracleRun run;
    auto post_jump = c;
    if (const auto* j = std::get_if<profile::SuddenJump>(&np.profile)) post_jump.omega0 = j->omega1;
    for (const auto& snap : snaps) {
        const auto lr = psi_n(0, grid, ep, snap.t, c);
        run.deficits.push_back(1.0 - std::abs(oracle::overlap(snap, lr)));
        std::vector<cplx> x2(grid.count);
        for (std::size_t i = 0; i < grid.count; ++i) x2[i] = grid.x(i) * grid.x(i) * std::norm(snap.values[i]);
        const double x2_cn = grid_ops::integrate(x2, grid.spacing()).real();
        const double rho = ep(snap.t).rho;
        const double x2_lr = 0.5 * c.hbar * rho * rho;
        run.x2_rel.push_back(std::abs(x2_cn - x2_lr) / x2_lr);
        if (std::holds_alternative<profile::SuddenJump>(np.profile)) {
            const auto ground = psi_n_static(0, grid, snap.t, post_jump);
            run.jump_p.push_back(std::norm(oracle::overlap(ground, snap)));
        }
    }
    return run;
}

inline void oracle_cross_validation(Tally& t)
{
    for (double hbar : hbar_values) {
        const auto c = consts(hbar);
        for (const auto& np : reference_profiles()) {
            const auto coarse = oracle_run(np, c, 4097, 0.25);
            const auto fine = oracle_run(np, c, 8193, 0.125);
            const std::string label = np.name + ", " + tag(hbar);
            t.within("max 1 - |<psi_CN|Psi_0>|, " + label,
                     *std::max_element(coarse.deficits.begin(), coarse.deficits.end()), 1e-3);
            bool monotone = true;
            for (std::size_t k = 0; k < coarse.deficits.size(); ++k) {
                monotone = monotone && fine.deficits[k] < coarse.deficits[k];
            }
            t.require("overlap deficit shrinks under dt, dx halving, " + label, monotone);
            t.within("max relative <x^2> mismatch, " + label,
                     *std::max_element(coarse.x2_rel.begin(), coarse.x2_rel.end()), 1e-3);
            if (!coarse.jump_p.empty()) {
                const double exact = sudden_jump_persistence(1.0, 2.0);
                double err = 0.0;
                for (double p : coarse.jump_p) err = std::max(err, std::abs(p - exact));
                t.within("instantaneous-ground overlap^2 vs 0.9428, " + label, err, 1e-3);
                const auto [lo, hi] = std::minmax_element(coarse.jump_p.begin(), coarse.jump_p.end());
                t.within("overlap^2 variation over time, " + label, *hi - *lo, 1e-4);
            }
        }
    }
}

inline void probability_completeness(Tally& t)
{
    for (double r : {0.1, 0.5, 1.0, 2.0}) {
        std::vector<double> terms;
        for (int nu = 0; nu <= 4000; nu += 2) terms.push_back(transition_prob(nu, r));
        const double total = quad::pairwise_sum<double>(terms);
        t.within("|sum P_{0->nu} - 1|, r=" + std::to_string(r), std::abs(total - 1.0), 1e-10);
    }
    double worst = 0.0;
    for (int k = 0; k <= 1000; ++k) {
        const double r = 0.005 * k;
        worst = std::max(worst, std::abs(persistence_prob(r) + excitation_prob(r) - 1.0));
    }
    t.within("|P_p + P_e - 1| over r in [0, 5]", worst, 0.0);
}

inline void uncertainty_structure(Tally& t)
{
    for (double hbar : hbar_values) {
        const auto c = consts(hbar);
        for (const auto& np : reference_profiles()) {
            const auto ep = closed_form_solution(np.profile, c, np.t_end);
            double deficit = 0.0, var_rel = 0.0;
            for (int n : {0, 1, 3}) {
                const double floor = hbar * hbar * (n + 0.5) * (n + 0.5);
                for (int k = 0; k <= 200; ++k) {
                    const double tk = np.t_end * k / 200.0;
                    const auto st = squeeze_state(ep, tk);
                    const double vx = variance_x(n, st, c);
                    const double vp = variance_p(n, st, c);
                    deficit = std::max(deficit, floor - vx * vp);
                    const double rho = ep(tk).rho;
                    const double ref = (n + 0.5) * hbar * rho * rho;
                    var_rel = std::max(var_rel, std::abs(vx - ref) / ref);
                }
            }
            const std::string label = np.name + ", " + tag(hbar);
            t.within("max hbar^2(n+1/2)^2 - var_x var_p, " + label, std::max(deficit, 0.0), 1e-12);
            t.within("max |var_x - (n+1/2) hbar rho^2| / ref, " + label, var_rel, 1e-9);
        }
        double phi0_err = 0.0;
        for (int n : {0, 2}) {
            for (double r : {0.0, 0.3, 1.0, 2.5}) {
                SqueezingState st;
                st.r = r;
                st.phi = 0.0;
                st.omega = 1.3;
                const double nh = (n + 0.5) * hbar;
                const double nx = variance_x(n, st, c) / (nh / (c.m0 * st.omega));
                const double np = variance_p(n, st, c) / (nh * c.m0 * st.omega);
                phi0_err = std::max(phi0_err, std::abs(nx - std::exp(2.0 * r)) / std::exp(2.0 * r));
                phi0_err = std::max(phi0_err, std::abs(np - std::exp(-2.0 * r)) / std::exp(-2.0 * r));
            }
        }
        t.within("phi = 0 normalised variances vs exp(+-2r), " + tag(hbar), phi0_err, 1e-9);
    }
}

inline void figure_regeneration(Tally& t)
{
    using namespace figures;
    const Settings s;
    const auto fig1 = make_figure(FigureId::fig1, s);
    std::optional<double> at2, at1;
    for (const auto& row : fig1.rows) {
        if (row[0] == 2.0) at2 = row[1];
        if (row[0] == 1.0) at1 = row[1];
    }
    t.require("fig1 has rows at omega1/omega0 = 1 and 2", at1 && at2);
    if (at1 && at2) {
        t.within("fig1(2) vs 0.94281", std::abs(*at2 - 0.94281), 5e-6);
        t.within("fig1(1) vs 1", std::abs(*at1 - 1.0), 1e-15);
    }
    const auto fig2 = make_figure(FigureId::fig2, s);
    t.within("fig2(t=0)", std::abs(fig2.rows.front()[1]), 1e-15);
    double r_max = 0.0;
    bool finite = true;
    for (const auto& row : fig2.rows) {
        r_max = std::max(r_max, row[1]);
        finite = finite && std::isfinite(row[1]);
    }
    t.require("fig2 bounded (finite, max r = " + std::to_string(r_max) + " < 10)", finite && r_max < 10.0);
    const auto fig3a = make_figure(FigureId::fig3a, s);
    const auto fig3b = make_figure(FigureId::fig3b, s);
    t.within("fig3a(t=0) - 1", std::abs(fig3a.rows.front()[1] - 1.0), 1e-12);
    t.within("fig3b(t=0) - 1", std::abs(fig3b.rows.front()[1] - 1.0), 1e-12);

    const auto fig4a = make_figure(FigureId::fig4a, s);
    const auto fig4b = make_figure(FigureId::fig4b, s);
    double sum_err = 0.0;
    for (std::size_t k = 0; k < fig4a.rows.size(); ++k) {
        sum_err = std::max(sum_err, std::abs(fig4a.rows[k][1] + fig4b.rows[k][1] - 1.0));
    }
    t.within("fig4a + fig4b - 1", sum_err, 1e-12);
    auto argmax = [](const FigureData& f) {
        return std::distance(f.rows.begin(), std::max_element(f.rows.begin(), f.rows.end(), [](const auto& a,
                                                                                             const auto& b) {
                                 return a[1] < b[1];
                             }));
    };
    const auto ir = argmax(fig2);
    const auto ie = argmax(fig4b);
    t.within("|argmax r - argmax P_e| in samples", static_cast<double>(std::abs(ir - ie)), 1.0);
}

inline void mathieu_checks(Tally& t)
{
    std::vector<mathieu::MathieuParams> params{paul_trap_mathieu_params(reference_trap())};
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 10; ++i) {
        const double a = u(rng);
        const double q = u(rng);
        params.push_back({a, q});
    }
    double w_err = 0.0;
    for (const auto& p : params) {
        for (int k = -80; k <= 80; ++k) {
            const double x = 0.25 * k;
            const auto e = mathieu::mathieu_even(p, x);
            const auto o = mathieu::mathieu_odd(p, x);
            const double scale = std::max(1.0, std::abs(e.value * o.derivative) + std::abs(o.value * e.derivative));
            const double w = e.value * o.derivative - o.value * e.derivative;
            w_err = std::max(w_err, std::abs(w - 1.0) / scale);
        }
    }
    t.within("Wronskian |W - 1| (relative to term size), |x| <= 20, 11 (a, q) pairs", w_err, 1e-9);

    double q0_err = 0.0;
    for (double a : {0.25, 1.0, 2.7}) {
        const double k = std::sqrt(a);
        for (int i = 0; i <= 80; ++i) {
            const double x = 0.25 * i;
            const auto e = mathieu::mathieu_even({a, 0.0}, x);
            const auto o = mathieu::mathieu_odd({a, 0.0}, x);
            q0_err = std::max(q0_err, std::abs(e.value - std::cos(k * x)));
            q0_err = std::max(q0_err, std::abs(o.value - std::sin(k * x) / k));
        }
    }
    t.within("q = 0 reduction to cos / sin", q0_err, 1e-10);
}

} // namespace detail

inline std::vector<Check> registry()
{
    return {
        {1, "sudden-jump persistence", 1.0, false, detail::jump_persistence},
        {2, "static reduction", 5.0, false, detail::static_reduction},
        {3, "invariant constancy", 30.0, false, detail::invariant_constancy},
        {4, "method triangle", 30.0, false, detail::method_triangle},
        {5, "oracle cross-validation", 300.0, true, detail::oracle_cross_validation},
        {6, "probability completeness", 1.0, false, detail::probability_completeness},
        {7, "uncertainty and squeezing structure", 5.0, false, detail::uncertainty_structure},
        {8, "figure regeneration", 30.0, false, detail::figure_regeneration},
        {9, "Mathieu module", 5.0, false, detail::mathieu_checks},
    };
}

inline CheckResult run_check(const Check& check, const Options& opt)
{
    CheckResult res;
    res.id = check.id;
    res.name = check.name;
    res.budget_seconds = check.budget_seconds;
    if (check.full_only && opt.level == Level::fast) {
        res.skipped = true;
        res.details.push_back("skipped at fast level");
        return res;
    }
    Tally tally(opt.tolerance_scale);
    const auto start = std::chrono::steady_clock::now();
    try {
        check.body(tally);
    } catch (const std::exception& e) {
        tally.fail(std::string("exception: ") + e.what());
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (opt.enforce_runtime) {
        tally.require("runtime " + std::to_string(res.seconds) + " s within " + std::to_string(check.budget_seconds) +
                          " s",
                      res.seconds <= check.budget_seconds);
    }
    res.passed = tally.passed();
    res.details = std::move(tally.details());
    return res;
}

inline std::vector<CheckResult> run_all(const Options& opt)
{
    std::vector<CheckResult> out;
    for (const auto& check : registry()) out.push_back(run_check(check, opt));
    return out;
}

inline bool all_passed(const std::vector<CheckResult>& results)
{
    return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

inline std::string status_word(const CheckResult& r)
{
    if (r.skipped) return "SKIP";
    return r.passed ? "PASS" : "FAIL";
}

/// One line per check, failing checks followed by their details.
inline void print_report(const std::vector<CheckResult>& results, std::ostream& os, bool verbose = false)
{
    for (const auto& r : results) {
        char head[160];
        std::snprintf(head, sizeof head, "[%s] criterion %d: %s (%.3f s)", status_word(r).c_str(), r.id,
                      r.name.c_str(), r.seconds);
        os << head << '\n';
        if (verbose || (!r.passed && !r.skipped)) {
            for (const auto& d : r.details) os << "    " << d << '\n';
        }
    }
}

inline nlohmann::json report_json(const std::vector<CheckResult>& results, Level level)
{
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& r : results) {
        checks.push_back({{"id", r.id},
                          {"name", r.name},
                          {"status", status_word(r)},
                          {"seconds", r.seconds},
                          {"budget_seconds", r.budget_seconds},
                          {"details", r.details}});
    }
    return {{"level", level == Level::fast ? "fast" : "full"}, {"passed", all_passed(results)}, {"checks", checks}};
}

} // namespace tdho::validation
