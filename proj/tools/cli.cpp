/*
   Copyright 2026 The nakcss Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "cli.hpp"

#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nakcss/error.hpp"
#include "nakcss/experiment.hpp"

namespace nakcss::cli {

namespace {

struct Flags {
    std::string config_path;
    std::optional<int> n_antennas;
    std::vector<double> m;
    std::vector<double> d2;
    std::vector<double> alpha;
    std::optional<double> pp_db;
    std::optional<double> ps_db;
    std::optional<double> k;
    std::optional<double> r_pt;
    std::optional<double> r_st;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    unsigned workers = 0;
    std::string out_path;
    std::string plot_script;
    int figure = 0;
};

double single(const std::vector<double>& values, const char* flag)
{
    if (values.size() != 1) {
        throw UsageError(std::string(flag) + " takes a single value for this command");
    }
    return values.front();
}

// Config file first, then flags. List-valued flags are applied to the base
// config only where the command treats them as scalars.
SystemConfig build_config(const Flags& f, bool scalar_m, bool scalar_d2, bool scalar_alpha)
{
    SystemConfig c;
    if (!f.config_path.empty()) c = read_config_file(f.config_path, c);
    if (f.n_antennas) c.n_antennas = *f.n_antennas;
    if (f.pp_db) c.pp_over_sigma2 = db_to_linear(*f.pp_db);
    if (f.ps_db) c.ps_over_sigma2 = db_to_linear(*f.ps_db);
    if (f.k) c.k = *f.k;
    if (f.r_pt) c.r_pt = *f.r_pt;
    if (f.r_st) c.r_st = *f.r_st;
    if (scalar_m && !f.m.empty()) c.m = single(f.m, "--m");
    if (scalar_d2 && !f.d2.empty()) c.d2 = single(f.d2, "--d2");
    if (scalar_alpha && !f.alpha.empty()) c.alpha = single(f.alpha, "--alpha");
    try {
        c.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    return c;
}

void emit(const Flags& f, std::ostream& out, const std::function<void(std::ostream&)>& body)
{
    if (f.out_path.empty()) {
        body(out);
        return;
    }
    std::ofstream file(f.out_path, std::ios::binary);
    if (!file) throw UsageError("cannot open output file " + f.out_path);
    body(file);
}

void add_common_options(CLI::App& app, Flags& f)
{
    app.add_option("--config", f.config_path, "key=value configuration file");
    app.add_option("--n-antennas", f.n_antennas, "receive antennas N at ST");
    app.add_option("--m", f.m, "Nakagami fading figure (list for figure 4)")->delimiter(',');
    app.add_option("--d2", f.d2, "PT-ST distance (list for figures 2/3)")->delimiter(',');
    app.add_option("--alpha", f.alpha, "power allocation factor (list for figures 2/3)")
        ->delimiter(',');
    app.add_option("--pp-db", f.pp_db, "primary transmit SNR P_p/sigma^2 in dB");
    app.add_option("--ps-db", f.ps_db, "secondary transmit SNR P_s/sigma^2 in dB");
    app.add_option("--k", f.k, "path-loss exponent");
    app.add_option("--rpt", f.r_pt, "primary target rate, bit/s/Hz");
    app.add_option("--rst", f.r_st, "secondary target rate, bit/s/Hz");
    app.add_option("--trials", f.trials, "Monte Carlo trials (0 = analysis only)");
    app.add_option("--seed", f.seed, "Monte Carlo master seed");
    app.add_option("--workers", f.workers, "worker threads (0 = all cores)");
    app.add_option("--out", f.out_path, "write output to PATH instead of stdout");
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Outage analysis of multi-antenna cooperative spectrum sharing over Nakagami-m fading"};
    app.require_subcommand(1);
    app.fallthrough();

    Flags f;
    add_common_options(app, f);

    auto* analyze_cmd = app.add_subcommand("analyze", "closed-form outage probabilities");
    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo outage estimates");
    auto* critical_cmd = app.add_subcommand("critical", "critical radius and minimum alpha");
    auto* figure_cmd = app.add_subcommand("figure", "CSV data for an outage figure");
    figure_cmd->add_option("number", f.figure, "figure number")
        ->required()
        ->check(CLI::IsMember({2, 3, 4}));
    figure_cmd->add_option("--plot-script", f.plot_script, "also write a gnuplot script");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (analyze_cmd->parsed()) {
            const SystemConfig c = build_config(f, true, true, true);
            emit(f, out, [&](std::ostream& os) { run_analyze(c, os); });
        } else if (simulate_cmd->parsed()) {
            const SystemConfig c = build_config(f, true, true, true);
            if (f.trials == 0) throw UsageError("simulate needs --trials >= 1");
            emit(f, out, [&](std::ostream& os) { run_simulate(c, f.trials, f.seed, f.workers, os); });
        } else if (critical_cmd->parsed()) {
            const SystemConfig c = build_config(f, true, true, true);
            emit(f, out, [&](std::ostream& os) { run_critical(c, os); });
        } else if (figure_cmd->parsed()) {
            const bool fig4 = f.figure == 4;
            ExperimentSpec spec;
            spec.base = build_config(f, !fig4, fig4, fig4);
            if (fig4) {
                spec.m_grid = f.m;
            } else {
                spec.alpha_grid = f.alpha;
                spec.d2_set = f.d2;
            }
            spec.trials = f.trials;
            spec.seed = f.seed;
            spec.workers = f.workers;
            validate_spec(spec);
            emit(f, out, [&](std::ostream& os) {
                if (f.figure == 2) run_fig2(spec, os);
                else if (f.figure == 3) run_fig3(spec, os);
                else run_fig4(spec, os);
            });
            if (!f.plot_script.empty()) {
                std::ofstream script(f.plot_script, std::ios::binary);
                if (!script) throw UsageError("cannot open " + f.plot_script);
                write_plot_script(f.figure, f.out_path.empty() ? "data.csv" : f.out_path, script);
            }
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kNumeric;
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << '\n';
        return kNumeric;
    }
    return kOk;
}

} // namespace nakcss::cli
