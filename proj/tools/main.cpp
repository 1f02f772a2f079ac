#include "dhopf/errors.hpp"
#include "dhopf/report/commands.hpp"
#include "dhopf/report/config.hpp"
#include "dhopf/report/output.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <cstdlib>
#include <iostream>
#include <optional>

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

std::filesystem::path output_dir(const std::optional<std::string>& flag,
                                 const dhopf::report::RunConfig& cfg) {
    if (flag) {
        return *flag;
    }
    if (!cfg.str("run.out_dir").empty()) {
        return cfg.str("run.out_dir");
    }
    if (const char* env = std::getenv("DHOPF_OUT_DIR"); env && *env) {
        return env;
    }
    return "dhopf-out";
}

}  // namespace

int main(int argc, char** argv) {
    using namespace dhopf::report;

    CLI::App app{"Delay-induced Hopf analysis of logistic gene-regulatory loops"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    app.set_help_all_flag("--help-all");

    std::optional<std::string> config_path;
    std::optional<std::string> out_dir;
    std::optional<std::int64_t> seed;
    std::optional<double> rtol;
    std::optional<double> atol;
    std::optional<int> threads;
    std::vector<std::string> overrides;
    app.add_option("--config", config_path, "Config file (key = value, or .json)");
    app.add_option("--out", out_dir, "Output directory (overrides DHOPF_OUT_DIR)");
    app.add_option("--seed", seed, "Random seed");
    app.add_option("--rtol", rtol, "Relative integration tolerance")->check(CLI::PositiveNumber);
    app.add_option("--atol", atol, "Absolute integration tolerance")->check(CLI::PositiveNumber);
    app.add_option("--threads", threads, "OpenMP worker threads")->check(CLI::PositiveNumber);
    app.add_option("--set", overrides, "Override a config key, e.g. --set model.lambda=1.5");

    auto* analyze = app.add_subcommand("analyze", "Closed-form Hopf and Lindstedt report");
    std::string table_sel = "all";
    auto* tables = app.add_subcommand("tables", "Regenerate Tables 1-4 as CSV");
    tables->add_option("which", table_sel, "1, 2, 3, 4 or all")
        ->check(CLI::IsMember({"1", "2", "3", "4", "all"}));
    auto* sweep = app.add_subcommand("sweep", "Amplitude and period over the tau grid");
    auto* integ = app.add_subcommand("integrate", "Integrate the delay system and export x(t)");
    auto* trace = app.add_subcommand("trace", "Continue the leading characteristic root in tau");
    auto* ngene = app.add_subcommand("ngene", "Cyclic N-gene Hopf analysis");
    auto* lyap = app.add_subcommand("lyapunov", "Lindstedt criticality across delay splits");
    auto* mc = app.add_subcommand("montecarlo", "Criticality sign over random parameter sets");
    auto* p53 = app.add_subcommand("calibrate-p53", "Loop gain and period from half-life and delay");
    double half_life = 0.0, delay = 0.0, observed = 0.0;
    auto* hl_opt = p53->add_option("--half-life", half_life, "Protein half-life");
    auto* dl_opt = p53->add_option("--delay", delay, "Total loop delay");
    auto* ob_opt = p53->add_option("--observed", observed, "Observed period");
    auto* hill = app.add_subcommand("hill-compare", "Logistic vs Hill Hopf locus");
    std::string fig_sel = "all";
    auto* figs = app.add_subcommand("figures", "Regenerate figure data and SVG plots");
    figs->add_option("which", fig_sel, "regimes, bifurcation, period, eigtraj or all")
        ->check(CLI::IsMember({"regimes", "bifurcation", "period", "eigtraj", "all"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        RunConfig cfg = config_path ? RunConfig::load(*config_path) : RunConfig{};
        for (const std::string& o : overrides) {
            const auto eq = o.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("--set expects key=value, got '" + o + "'");
            }
            cfg.set(o.substr(0, eq), o.substr(eq + 1));
        }
        if (seed) cfg.set("run.seed", Value{*seed});
        if (rtol) cfg.set("solver.rtol", Value{*rtol});
        if (atol) cfg.set("solver.atol", Value{*atol});
        if (threads) cfg.set("run.threads", Value{std::int64_t{*threads}});
        if (*hl_opt) cfg.set("p53.half_life", Value{half_life});
        if (*dl_opt) cfg.set("p53.delay", Value{delay});
        if (*ob_opt) cfg.set("p53.observed_period", Value{observed});
        if (cfg.integer("run.threads") > 0) {
            omp_set_num_threads(static_cast<int>(cfg.integer("run.threads")));
        }

        Manifest manifest(output_dir(out_dir, cfg));
        std::ostream& out = std::cout;
        std::string command;
        if (*analyze) {
            command = "analyze";
            cmd_analyze(cfg, manifest, out);
        } else if (*tables) {
            command = "tables " + table_sel;
            cmd_tables(cfg, table_sel == "all" ? 0 : std::stoi(table_sel), manifest, out);
        } else if (*sweep) {
            command = "sweep";
            cmd_sweep(cfg, manifest, out);
        } else if (*integ) {
            command = "integrate";
            cmd_integrate(cfg, manifest, out);
        } else if (*trace) {
            command = "trace";
            cmd_trace(cfg, manifest, out);
        } else if (*ngene) {
            command = "ngene";
            cmd_ngene(cfg, manifest, out);
        } else if (*lyap) {
            command = "lyapunov";
            cmd_lyapunov(cfg, manifest, out);
        } else if (*mc) {
            command = "montecarlo";
            cmd_montecarlo(cfg, manifest, out);
        } else if (*p53) {
            command = "calibrate-p53";
            cmd_calibrate_p53(cfg, manifest, out);
        } else if (*hill) {
            command = "hill-compare";
            cmd_hill_compare(cfg, manifest, out);
        } else if (*figs) {
            command = "figures " + fig_sel;
            cmd_figures(cfg, fig_sel, manifest, out);
        }
        manifest.finish(command, cfg.resolved_lines());
        out << "Outputs and manifest in " << manifest.dir().string() << "\n";
    } catch (const ConfigError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const dhopf::DomainError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const dhopf::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
