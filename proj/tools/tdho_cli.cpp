// tdho_cli: runs the invariant-method pipeline on a JSON config, writes
// figure data and runs the acceptance checks.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tdho/ermakov.hpp"
#include "tdho/figures.hpp"
#include "tdho/io/csv.hpp"
#include "tdho/io/json.hpp"
#include "tdho/io/run_config.hpp"
#include "tdho/squeezing.hpp"
#include "tdho/validation.hpp"
#include "tdho/wavefunction.hpp"

namespace fs = std::filesystem;
using namespace tdho;

namespace {

enum Exit { ok = 0, validation_failed = 1, usage = 2, numeric = 3 };

struct Args {
    std::string config;
    std::string out;
    std::string level = "fast";
    std::vector<std::string> figures;
    std::string report;
    double tolerance_scale = 1.0;
    bool verbose = false;
};

/// Opens the destination for `name`: --out directory, then the config's
/// "output" path, then stdout.
class Sink {
public:
    Sink(const Args& a, const std::optional<std::string>& cfg_output, const std::string& name)
    {
        std::string path;
        if (!a.out.empty()) {
            fs::create_directories(a.out);
            path = (fs::path(a.out) / (name + ".csv")).string();
        } else if (cfg_output) {
            path = *cfg_output;
        }
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw io::ConfigError("cannot write '" + path + "'");
        }
    }

    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

void write_metadata(io::CsvWriter& w, const io::RunConfig& cfg, const EPSolution& ep, const std::string& command)
{
    w.comment("command: " + command);
    w.comment("profile: " + io::profile_to_json(cfg.profile).dump());
    w.comment("constants: " + io::constants_to_json(cfg.constants).dump());
    w.comment(std::string("version: ") + TDHO_VERSION);
    w.comment(std::string("method: ") + method_name(ep.method()));
}

io::RunConfig require_config(const Args& a)
{
    if (a.config.empty()) throw io::ConfigError("--config <path.json> is required");
    return io::load_run_config(a.config);
}

int cmd_rho(const Args& a)
{
    const auto cfg = require_config(a);
    const auto ep = io::solve_for(cfg);
    Sink sink(a, cfg.output, "rho");
    io::CsvWriter w(sink.stream());
    write_metadata(w, cfg, ep, "rho");
    w.header({"t", "rho", "rhodot"});
    for (double t : cfg.times()) {
        const auto s = ep(t);
        w.row({t, s.rho, s.rhodot});
    }
    return ok;
}

int cmd_squeeze(const Args& a)
{
    const auto cfg = require_config(a);
    const auto ep = io::solve_for(cfg);
    Sink sink(a, cfg.output, "squeeze");
    io::CsvWriter w(sink.stream());
    write_metadata(w, cfg, ep, "squeeze");
    w.comment("phi is empty where r = 0 (phase undefined)");
    w.header({"t", "r", "phi", "lambda", "omega"});
    for (double t : cfg.times()) {
        const auto st = squeeze_state(ep, t);
        w.row({t, st.r, st.phi, st.lambda, st.omega});
    }
    return ok;
}

int cmd_variances(const Args& a)
{
    const auto cfg = require_config(a);
    const auto ep = io::solve_for(cfg);
    Sink sink(a, cfg.output, "variances");
    io::CsvWriter w(sink.stream());
    write_metadata(w, cfg, ep, "variances");
    w.comment("n = " + std::to_string(cfg.n) + "; normalised by hbar (n + 1/2) / (m0 omega0) and hbar m0 omega0 (n + 1/2)");
    w.header({"t", "var_x", "var_p", "var_x_normalized", "var_p_normalized"});
    const auto& c = cfg.constants;
    const double nh = (cfg.n + 0.5) * c.hbar;
    for (double t : cfg.times()) {
        const auto st = squeeze_state(ep, t);
        const double vx = variance_x(cfg.n, st, c);
        const double vp = variance_p(cfg.n, st, c);
        w.row({t, vx, vp, vx / (nh / (c.m0 * c.omega0)), vp / (nh * c.m0 * c.omega0)});
    }
    return ok;
}

int cmd_probabilities(const Args& a)
{
    const auto cfg = require_config(a);
    const auto ep = io::solve_for(cfg);
    Sink sink(a, cfg.output, "probabilities");
    io::CsvWriter w(sink.stream());
    write_metadata(w, cfg, ep, "probabilities");
    w.header({"t", "r", "P_p", "P_e", "P_0to2", "P_0to4"});
    for (double t : cfg.times()) {
        const double r = squeeze_state(ep, t).r;
        w.row({t, r, persistence_prob(r), excitation_prob(r), transition_prob(2, r), transition_prob(4, r)});
    }
    return ok;
}

int cmd_wavefunction(const Args& a)
{
    const auto cfg = require_config(a);
    const auto ep = io::solve_for(cfg);
    const auto grid = cfg.grid.value_or(default_grid(ep, cfg.n, cfg.grid_count));
    Sink sink(a, cfg.output, "wavefunction");
    io::CsvWriter w(sink.stream());
    write_metadata(w, cfg, ep, "wavefunction");
    w.comment("n = " + std::to_string(cfg.n) + "; grid " + io::format_double(grid.x_min) + " .. " +
              io::format_double(grid.x_max) + ", " + std::to_string(grid.count) + " points");
    w.header({"t", "x", "re", "im", "abs2"});
    for (double t : cfg.times()) {
        const auto f = psi_n(cfg.n, grid, ep, t, cfg.constants);
        for (std::size_t i = 0; i < grid.count; ++i) {
            const auto v = f.values[i];
            w.row({t, grid.x(i), v.real(), v.imag(), std::norm(v)});
        }
    }
    return ok;
}

int cmd_figures(const Args& a)
{
    std::vector<figures::FigureId> ids;
    for (const auto& name : a.figures) {
        const auto id = figures::parse_figure(name);
        if (!id) throw io::ConfigError("unknown figure id '" + name + "' (expected fig1, fig2, fig3a, fig3b, fig4a, fig4b)");
        ids.push_back(*id);
    }
    if (ids.empty()) ids.assign(figures::all_figures.begin(), figures::all_figures.end());

    figures::Settings s;
    if (!a.config.empty()) {
        std::ifstream in(a.config);
        if (!in) throw io::ConfigError("cannot open config file '" + a.config + "'");
        io::json j;
        try {
            j = io::json::parse(in);
        } catch (const io::json::parse_error& e) {
            throw io::ConfigError(std::string("invalid JSON: ") + e.what());
        }
        s.constants = io::constants_from_json(j.value("constants", io::json()));
        s.n = j.value("n", 0);
        if (s.n < 0) throw io::ConfigError("'n' must be >= 0");
    }
    const fs::path dir = a.out.empty() ? fs::path(".") : fs::path(a.out);
    fs::create_directories(dir);
    for (auto id : ids) {
        const auto fig = figures::make_figure(id, s);
        const auto path = dir / (std::string(figures::figure_name(id)) + ".csv");
        std::ofstream os(path);
        if (!os) throw io::ConfigError("cannot write '" + path.string() + "'");
        figures::write_figure(fig, os);
        std::cout << "wrote " << path.string() << " (" << fig.rows.size() << " rows)\n";
    }
    return ok;
}

int cmd_validate(const Args& a)
{
    validation::Options opt;
    if (a.level == "fast") {
        opt.level = validation::Level::fast;
    } else if (a.level == "full") {
        opt.level = validation::Level::full;
    } else {
        throw io::ConfigError("--level must be fast or full");
    }
    opt.tolerance_scale = a.tolerance_scale;
    const auto results = validation::run_all(opt);
    validation::print_report(results, std::cout, a.verbose);
    const auto report = validation::report_json(results, opt.level);
    std::string report_path = a.report;
    if (report_path.empty() && !a.out.empty()) {
        fs::create_directories(a.out);
        report_path = (fs::path(a.out) / "validation_report.json").string();
    }
    if (!report_path.empty()) {
        std::ofstream os(report_path);
        if (!os) throw io::ConfigError("cannot write '" + report_path + "'");
        os << report.dump(2) << '\n';
    }
    const bool passed = validation::all_passed(results);
    std::cout << (passed ? "validation passed" : "validation FAILED") << '\n';
    return passed ? ok : validation_failed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Time-dependent harmonic oscillator via Lewis-Riesenfeld invariants"};
    app.require_subcommand(1);
    app.set_version_flag("--version", TDHO_VERSION);
    Args args;

    auto with_config = [&args](CLI::App* sub) {
        sub->add_option("--config", args.config, "Run configuration (JSON)")->check(CLI::ExistingFile);
        sub->add_option("--out", args.out, "Output directory");
        return sub;
    };
    auto* rho = with_config(app.add_subcommand("rho", "Ermakov-Pinney solution rho(t), rhodot(t)"));
    auto* squeeze = with_config(app.add_subcommand("squeeze", "Squeezing parameters r, phi, lambda"));
    auto* variances = with_config(app.add_subcommand("variances", "Position and momentum variances"));
    auto* probabilities = with_config(app.add_subcommand("probabilities", "Persistence and excitation probabilities"));
    auto* wavefunction = with_config(app.add_subcommand("wavefunction", "Wave function Psi_n(x, t) on a grid"));
    auto* figs = with_config(app.add_subcommand("figures", "CSV data for the figures"));
    figs->add_option("ids", args.figures, "fig1 fig2 fig3a fig3b fig4a fig4b (default: all)");
    auto* validate = app.add_subcommand("validate", "Run the acceptance checks");
    validate->add_option("--level", args.level, "fast or full");
    validate->add_option("--out", args.out, "Directory for validation_report.json");
    validate->add_option("--report", args.report, "Path of the JSON report");
    validate->add_flag("--verbose", args.verbose, "Print every measured quantity");
    validate->add_option("--tolerance-scale", args.tolerance_scale)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    try {
        if (*rho) return cmd_rho(args);
        if (*squeeze) return cmd_squeeze(args);
        if (*variances) return cmd_variances(args);
        if (*probabilities) return cmd_probabilities(args);
        if (*wavefunction) return cmd_wavefunction(args);
        if (*figs) return cmd_figures(args);
        if (*validate) return cmd_validate(args);
    } catch (const io::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return usage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return usage;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return usage;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return numeric;
    }
    return usage;
}
