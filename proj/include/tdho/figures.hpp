#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "tdho/ermakov.hpp"
#include "tdho/io/csv.hpp"
#include "tdho/io/json.hpp"
#include "tdho/squeezing.hpp"

#ifndef TDHO_VERSION
#define TDHO_VERSION "unknown"
#endif

namespace tdho::figures {

enum class FigureId { fig1, fig2, fig3a, fig3b, fig4a, fig4b };

inline constexpr std::array<FigureId, 6> all_figures{FigureId::fig1,  FigureId::fig2,  FigureId::fig3a,
                                                     FigureId::fig3b, FigureId::fig4a, FigureId::fig4b};

inline const char* figure_name(FigureId id)
{
    switch (id) {
    case FigureId::fig1: return "fig1";
    case FigureId::fig2: return "fig2";
    case FigureId::fig3a: return "fig3a";
    case FigureId::fig3b: return "fig3b";
    case FigureId::fig4a: return "fig4a";
    case FigureId::fig4b: return "fig4b";
    }
    return "?";
}

inline std::optional<FigureId> parse_figure(std::string_view name)
{
    for (auto id : all_figures) {
        if (name == figure_name(id)) return id;
    }
    return std::nullopt;
}

struct Settings {
    OscillatorConstants constants;
    int n = 0;                             ///< level used by the variance figures
    std::size_t ratio_samples = 301;       ///< log-spaced omega1/omega0 points
    std::size_t time_samples = 501;        ///< t/tau points over [0, t_over_tau_max]
    double t_over_tau_max = 5.0;
};

/// Paul trap used by the time-domain figures: beta = 1, gamma = 1/2, omega0 tau = 3.
inline profile::PaulTrap figure_trap(double omega0) { return profile::PaulTrap{omega0, 1.0, 0.5, 3.0 / omega0}; }

struct FigureData {
    FigureId id = FigureId::fig1;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> notes;
    std::optional<FrequencyProfile> profile;
    OscillatorConstants constants;
    std::string method;
};

/// omega1/omega0 grid: 10^(-2 + 3k/(N-1)), so 0.01, 1 and 10 are hit exactly
/// when N - 1 is a multiple of 3, plus the value 2.
inline std::vector<double> ratio_grid(std::size_t samples)
{
    if (samples < 2) throw ParameterError("figure needs at least 2 samples");
    std::vector<double> out;
    const double span = static_cast<double>(samples - 1);
    for (std::size_t k = 0; k < samples; ++k) out.push_back(std::pow(10.0, -2.0 + 3.0 * static_cast<double>(k) / span));
    out.push_back(2.0);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::vector<double> time_grid(std::size_t samples, double upper)
{
    if (samples < 2) throw ParameterError("figure needs at least 2 samples");
    std::vector<double> out(samples);
    const double span = static_cast<double>(samples - 1);
    for (std::size_t k = 0; k < samples; ++k) out[k] = upper * static_cast<double>(k) / span;
    return out;
}

inline FigureData make_figure(FigureId id, const Settings& s)
{
    s.constants.validate();
    FigureData fig;
    fig.id = id;
    fig.constants = s.constants;
    if (id == FigureId::fig1) {
        fig.columns = {"omega1_over_omega0", "P_p"};
        fig.method = "closed_form";
        fig.notes.push_back("omega1/omega0 log-sampled over [0.01, 10] (" + std::to_string(s.ratio_samples) +
                            " points) plus omega1/omega0 = 2");
        for (double ratio : ratio_grid(s.ratio_samples)) {
            fig.rows.push_back({ratio, sudden_jump_persistence(1.0, ratio)});
        }
        return fig;
    }

    const auto trap = figure_trap(s.constants.omega0);
    fig.profile = trap;
    fig.method = "closed_form";
    fig.notes.push_back("Paul trap beta = 1, gamma = 0.5, omega0 tau = 3");
    const auto times = time_grid(s.time_samples, s.t_over_tau_max);
    const auto ep = closed_form_solution(trap, s.constants, s.t_over_tau_max * trap.tau);
    const double nh = (s.n + 0.5) * s.constants.hbar;
    const double var_x_ref = nh / (s.constants.m0 * s.constants.omega0);
    const double var_p_ref = nh * s.constants.m0 * s.constants.omega0;

    switch (id) {
    case FigureId::fig2: fig.columns = {"t_over_tau", "r"}; break;
    case FigureId::fig3a: fig.columns = {"t_over_tau", "var_x_normalized"}; break;
    case FigureId::fig3b: fig.columns = {"t_over_tau", "var_p_normalized"}; break;
    case FigureId::fig4a: fig.columns = {"t_over_tau", "P_p"}; break;
    case FigureId::fig4b: fig.columns = {"t_over_tau", "P_e"}; break;
    case FigureId::fig1: break;
    }
    if (id == FigureId::fig3a || id == FigureId::fig3b) fig.notes.push_back("n = " + std::to_string(s.n));

    for (double u : times) {
        const double t = std::min(u * trap.tau, ep.t_end());
        const auto st = squeeze_state(ep, t);
        double value = 0.0;
        switch (id) {
        case FigureId::fig2: value = st.r; break;
        case FigureId::fig3a: value = variance_x(s.n, st, s.constants) / var_x_ref; break;
        case FigureId::fig3b: value = variance_p(s.n, st, s.constants) / var_p_ref; break;
        case FigureId::fig4a: value = persistence_prob(st.r); break;
        case FigureId::fig4b: value = excitation_prob(st.r); break;
        case FigureId::fig1: break;
        }
        fig.rows.push_back({u, value});
    }
    return fig;
}

inline void write_figure(const FigureData& fig, std::ostream& os)
{
    io::CsvWriter w(os);
    w.comment(std::string("figure: ") + figure_name(fig.id));
    if (fig.profile) w.comment("profile: " + io::profile_to_json(*fig.profile).dump());
    w.comment("constants: " + io::constants_to_json(fig.constants).dump());
    w.comment(std::string("version: ") + TDHO_VERSION);
    w.comment("method: " + fig.method);
    for (const auto& note : fig.notes) w.comment(note);
    w.header(fig.columns);
    for (const auto& row : fig.rows) w.row(row);
}

} // namespace tdho::figures
