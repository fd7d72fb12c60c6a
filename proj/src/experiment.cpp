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

#include "nakcss/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "nakcss/analysis.hpp"
#include "nakcss/error.hpp"
#include "nakcss/simulate.hpp"

namespace nakcss {

namespace {

// Keeps the CSV byte-stable: fixed separator, LF endings, %.17g numbers.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    CsvWriter& cell(const std::string& s)
    {
        if (!first_) out_ << ',';
        out_ << s;
        first_ = false;
        return *this;
    }
    CsvWriter& cell(double v) { return cell(format_number(v)); }
    CsvWriter& empty() { return cell(std::string()); }

    void end_row()
    {
        out_ << '\n';
        first_ = true;
    }

private:
    std::ostream& out_;
    bool first_ = true;
};

void key_value(std::ostream& out, const char* key, double v)
{
    out << key << '=' << format_number(v) << '\n';
}

void key_value(std::ostream& out, const char* key, const std::string& v)
{
    out << key << '=' << v << '\n';
}

void check_point(const SystemConfig& c, const std::string& where)
{
    try {
        c.validate();
    } catch (const DomainError& e) {
        throw UsageError("invalid grid point (" + where + "): " + e.what());
    }
}

bool is_reference_scenario(const SystemConfig& c)
{
    return c.pp_over_sigma2 == 100.0 && c.m == 0.7 && c.k == 4.0 && c.r_pt == 1.0;
}

SimulationOptions sim_options(const ExperimentSpec& spec)
{
    return {spec.trials, spec.seed, spec.workers};
}

void write_config(std::ostream& out, const SystemConfig& c)
{
    key_value(out, "pp_over_sigma2", c.pp_over_sigma2);
    key_value(out, "ps_over_sigma2", c.ps_over_sigma2);
    key_value(out, "r_pt", c.r_pt);
    key_value(out, "r_st", c.r_st);
    key_value(out, "alpha", c.alpha);
    out << "n_antennas=" << c.n_antennas << '\n';
    key_value(out, "m", c.m);
    key_value(out, "k", c.k);
    key_value(out, "d2", c.d2);
}

} // namespace

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

std::string format_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> default_alpha_grid()
{
    std::vector<double> g;
    for (int i = 0; i < 100; ++i) g.push_back(i / 100.0);
    return g;
}

std::vector<double> default_m_grid()
{
    std::vector<double> g;
    for (int i = 0; i <= 18; ++i) g.push_back(0.5 + 0.25 * i);
    return g;
}

std::vector<double> default_d2_set(const SystemConfig& base)
{
    if (is_reference_scenario(base) && base.n_antennas == 4) return {0.8, 1.5, 3.25};
    if (is_reference_scenario(base) && base.n_antennas == 2) return {0.8, 1.5, 2.625};
    try {
        const CriticalRadius cr =
            critical_omega2(base, derive_topology(base), derive_thresholds(base));
        return {0.8, 1.5, cr.d2_tilde};
    } catch (const DomainError&) {
        return {0.8, 1.5};
    }
}

void validate_spec(const ExperimentSpec& spec)
{
    check_point(spec.base, "base");
    for (double a : spec.alpha_grid) {
        SystemConfig c = spec.base;
        c.alpha = a;
        check_point(c, "alpha=" + format_number(a));
    }
    for (double m : spec.m_grid) {
        SystemConfig c = spec.base;
        c.m = m;
        check_point(c, "m=" + format_number(m));
    }
    for (double d2 : spec.d2_set) {
        SystemConfig c = spec.base;
        c.d2 = d2;
        check_point(c, "d2=" + format_number(d2));
    }
}

void run_fig2(const ExperimentSpec& spec, std::ostream& out)
{
    validate_spec(spec);
    const auto alphas = spec.alpha_grid.empty() ? default_alpha_grid() : spec.alpha_grid;
    const auto d2s = spec.d2_set.empty() ? default_d2_set(spec.base) : spec.d2_set;

    CsvWriter csv(out);
    csv.cell("d2").cell("alpha").cell("f_op_analytic").cell("f_op_mc").cell("mc_stderr").cell("p_d");
    csv.end_row();
    for (double d2 : d2s) {
        for (double alpha : alphas) {
            SystemConfig c = spec.base;
            c.d2 = d2;
            c.alpha = alpha;
            const AnalysisPoint pt = analyze(c);
            csv.cell(d2).cell(alpha).cell(pt.f_op);
            if (spec.trials > 0) {
                const OutageEstimate e = simulate_primary(c, sim_options(spec));
                csv.cell(e.p_hat).cell(e.std_error);
            } else {
                csv.empty().empty();
            }
            csv.cell(pt.p_d);
            csv.end_row();
        }
    }
}

void run_fig3(const ExperimentSpec& spec, std::ostream& out)
{
    validate_spec(spec);
    const auto alphas = spec.alpha_grid.empty() ? default_alpha_grid() : spec.alpha_grid;
    const auto d2s = spec.d2_set.empty() ? default_d2_set(spec.base) : spec.d2_set;

    CsvWriter csv(out);
    csv.cell("d2").cell("alpha").cell("f_os_analytic").cell("f_os_mc").cell("mc_stderr");
    csv.end_row();
    for (double d2 : d2s) {
        for (double alpha : alphas) {
            SystemConfig c = spec.base;
            c.d2 = d2;
            c.alpha = alpha;
            csv.cell(d2).cell(alpha).cell(secondary_outage(c, derive_topology(c), derive_thresholds(c)));
            if (spec.trials > 0) {
                const OutageEstimate e = simulate_secondary(c, sim_options(spec));
                csv.cell(e.p_hat).cell(e.std_error);
            } else {
                csv.empty().empty();
            }
            csv.end_row();
        }
    }
}

void run_fig4(const ExperimentSpec& spec, std::ostream& out)
{
    validate_spec(spec);
    const auto ms = spec.m_grid.empty() ? default_m_grid() : spec.m_grid;

    CsvWriter csv(out);
    csv.cell("m").cell("f_op_analytic").cell("f_os_analytic").cell("f_op_mc").cell("f_os_mc");
    csv.cell("f_op_mc_stderr").cell("f_os_mc_stderr");
    csv.end_row();
    for (double m : ms) {
        SystemConfig c = spec.base;
        c.m = m;
        const AnalysisPoint pt = analyze(c);
        csv.cell(m).cell(pt.f_op).cell(pt.f_os);
        if (spec.trials > 0) {
            const SimulationResult r = simulate_all(c, sim_options(spec));
            csv.cell(r.primary.p_hat).cell(r.secondary.p_hat);
            csv.cell(r.primary.std_error).cell(r.secondary.std_error);
        } else {
            csv.empty().empty().empty().empty();
        }
        csv.end_row();
    }
}

void run_analyze(const SystemConfig& config, std::ostream& out)
{
    const Topology topo = derive_topology(config);
    const Thresholds th = derive_thresholds(config);
    const AnalysisPoint pt = analyze(config, topo, th);

    write_config(out, config);
    for (std::size_t i = 0; i < kLinkCount; ++i) {
        key_value(out, ("omega" + std::to_string(i + 1)).c_str(), topo.omega[i]);
    }
    key_value(out, "rho1", th.rho1);
    key_value(out, "rho2", th.rho2);
    key_value(out, "rho3", th.rho3);
    key_value(out, "alpha_hat", th.alpha_hat);
    key_value(out, "branch", to_string(pt.branch));
    key_value(out, "prob_st_decodes", prob_st_decodes(config, topo, th));
    key_value(out, "prob_rp_exceeds", prob_rp_exceeds(config, topo, th));
    key_value(out, "prob_direct_half", prob_direct_half(config, topo, th));
    key_value(out, "f_op", pt.f_op);
    key_value(out, "f_os", pt.f_os);
    key_value(out, "p_d", pt.p_d);
}

void run_simulate(const SystemConfig& config, std::uint64_t trials, std::uint64_t seed,
                  unsigned workers, std::ostream& out)
{
    const SimulationResult r = simulate_all(config, {trials, seed, workers});
    const AnalysisPoint pt = analyze(config);

    write_config(out, config);
    out << "trials=" << trials << '\n';
    out << "seed=" << seed << '\n';
    key_value(out, "f_op_mc", r.primary.p_hat);
    key_value(out, "f_op_stderr", r.primary.std_error);
    key_value(out, "f_op_analytic", pt.f_op);
    key_value(out, "f_os_mc", r.secondary.p_hat);
    key_value(out, "f_os_stderr", r.secondary.std_error);
    key_value(out, "f_os_analytic", pt.f_os);
    key_value(out, "p_d_mc", r.direct.p_hat);
    key_value(out, "p_d_stderr", r.direct.std_error);
    key_value(out, "p_d_analytic", pt.p_d);
}

void run_critical(const SystemConfig& config, std::ostream& out)
{
    const Topology topo = derive_topology(config);
    const Thresholds th = derive_thresholds(config);
    const CriticalRadius radius = critical_omega2(config, topo, th);
    const CriticalAlpha alpha = critical_alpha(config, topo, th);

    write_config(out, config);
    key_value(out, "alpha_hat", th.alpha_hat);
    key_value(out, "ratio", radius.ratio);
    key_value(out, "omega2_tilde", radius.omega2_tilde);
    key_value(out, "d2_tilde", radius.d2_tilde);
    key_value(out, "phi", alpha.phi);
    key_value(out, "chi", alpha.chi);
    key_value(out, "alpha_tilde_status", to_string(alpha.status));
    key_value(out, "alpha_tilde", alpha.alpha_tilde);
}

void write_plot_script(int figure, const std::string& csv_path, std::ostream& out)
{
    out << "# gnuplot -p -c <this file>\n"
        << "set datafile separator ','\n"
        << "set key autotitle columnhead\n"
        << "set logscale y\n"
        << "set ylabel 'outage probability'\n";
    switch (figure) {
    case 2:
        out << "set xlabel 'alpha'\n"
            << "plot '" << csv_path << "' using 2:3 with lines, '' using 2:4 with points, "
            << "'' using 2:6 with lines dashtype 2\n";
        break;
    case 3:
        out << "set xlabel 'alpha'\n"
            << "plot '" << csv_path << "' using 2:3 with lines, '' using 2:4 with points\n";
        break;
    default:
        out << "set xlabel 'm'\n"
            << "plot '" << csv_path << "' using 1:2 with lines, '' using 1:3 with lines, "
            << "'' using 1:4 with points, '' using 1:5 with points\n";
        break;
    }
}

} // namespace nakcss
