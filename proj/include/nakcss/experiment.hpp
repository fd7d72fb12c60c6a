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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nakcss/model.hpp"

namespace nakcss {

/// Plain-text configuration: one `key = value` per line, keys named after
/// SystemConfig fields (pp_over_sigma2, ps_over_sigma2, r_pt, r_st, alpha,
/// n_antennas, m, k, d2). Values are linear scale. `#` starts a comment.
/// Unknown keys and unparsable values throw UsageError. Fields absent from
/// the input keep their value from `base`.
SystemConfig read_config(std::istream& in, SystemConfig base = {});
SystemConfig read_config_file(const std::string& path, SystemConfig base = {});

/// Sets one SystemConfig field by name. Throws UsageError.
void set_config_field(SystemConfig& config, const std::string& key, const std::string& value);

double db_to_linear(double db);

/// Parameter sweep behind one of the outage figures. Empty grids select the
/// defaults below. trials == 0 skips Monte Carlo and leaves those columns
/// empty.
struct ExperimentSpec {
    SystemConfig base;
    std::vector<double> alpha_grid;
    std::vector<double> m_grid;
    std::vector<double> d2_set;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    unsigned workers = 0;
};

/// 0, 0.01, ..., 0.99
std::vector<double> default_alpha_grid();
/// 0.5, 0.75, ..., 5
std::vector<double> default_m_grid();
/// {0.8, 1.5, d2_tilde}. The reference scenario (20 dB, m = 0.7, k = 4,
/// R_pt = 1) uses the published radii 3.25 (N = 4) and 2.625 (N = 2);
/// anything else uses the computed critical radius.
std::vector<double> default_d2_set(const SystemConfig& base);

/// Checks every grid point against SystemConfig's invariants. Throws UsageError.
void validate_spec(const ExperimentSpec& spec);

/// Primary outage vs alpha: d2, alpha, f_op_analytic, f_op_mc, mc_stderr, p_d
void run_fig2(const ExperimentSpec& spec, std::ostream& out);
/// Secondary outage vs alpha: d2, alpha, f_os_analytic, f_os_mc, mc_stderr
void run_fig3(const ExperimentSpec& spec, std::ostream& out);
/// Both outages vs m: m, f_op_analytic, f_os_analytic, f_op_mc, f_os_mc,
/// f_op_mc_stderr, f_os_mc_stderr
void run_fig4(const ExperimentSpec& spec, std::ostream& out);

// key=value reports
void run_analyze(const SystemConfig& config, std::ostream& out);
void run_simulate(const SystemConfig& config, std::uint64_t trials, std::uint64_t seed,
                  unsigned workers, std::ostream& out);
void run_critical(const SystemConfig& config, std::ostream& out);

/// gnuplot script plotting the CSV written by run_fig{2,3,4}.
void write_plot_script(int figure, const std::string& csv_path, std::ostream& out);

/// %.17g; the formatting used for every number the harness prints.
std::string format_number(double v);

} // namespace nakcss
