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

#include <charconv>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>

#include "nakcss/error.hpp"
#include "nakcss/experiment.hpp"

namespace nakcss {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& key, std::string_view text)
{
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw UsageError("config: cannot parse value '" + std::string(text) + "' for " + key);
    }
    return value;
}

} // namespace

void set_config_field(SystemConfig& config, const std::string& key, const std::string& value)
{
    const std::string_view v = trim(value);
    if (key == "pp_over_sigma2") {
        config.pp_over_sigma2 = parse_number<double>(key, v);
    } else if (key == "ps_over_sigma2") {
        config.ps_over_sigma2 = parse_number<double>(key, v);
    } else if (key == "r_pt") {
        config.r_pt = parse_number<double>(key, v);
    } else if (key == "r_st") {
        config.r_st = parse_number<double>(key, v);
    } else if (key == "alpha") {
        config.alpha = parse_number<double>(key, v);
    } else if (key == "n_antennas") {
        config.n_antennas = parse_number<int>(key, v);
    } else if (key == "m") {
        config.m = parse_number<double>(key, v);
    } else if (key == "k") {
        config.k = parse_number<double>(key, v);
    } else if (key == "d2") {
        config.d2 = parse_number<double>(key, v);
    } else {
        throw UsageError("config: unknown key '" + key + "'");
    }
}

SystemConfig read_config(std::istream& in, SystemConfig base)
{
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view body = line;
        if (const auto hash = body.find('#'); hash != std::string_view::npos) {
            body = body.substr(0, hash);
        }
        body = trim(body);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) {
            throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
        }
        set_config_field(base, std::string(trim(body.substr(0, eq))),
                         std::string(body.substr(eq + 1)));
    }
    return base;
}

SystemConfig read_config_file(const std::string& path, SystemConfig base)
{
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file " + path);
    return read_config(in, base);
}

} // namespace nakcss
