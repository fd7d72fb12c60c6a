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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "nakcss/analysis.hpp"
#include "nakcss/experiment.hpp"

using namespace nakcss;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "nakcss");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::map<std::string, std::string> parse_report(const std::string& text)
{
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        REQUIRE(eq != std::string::npos);
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

using Table = std::vector<std::vector<std::string>>;

Table parse_csv(const std::string& text)
{
    Table rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

double num(const std::string& s)
{
    return std::stod(s);
}

std::filesystem::path temp_path(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("nakcss_test_" + name);
}

} // namespace

TEST_CASE("critical report reproduces the published radii")
{
    for (auto [n, expected] : {std::pair{"4", 3.25}, std::pair{"2", 2.625}}) {
        const Result r = run_cli({"critical", "--n-antennas", n});
        REQUIRE(r.code == cli::kOk);
        auto kv = parse_report(r.out);
        CHECK(std::abs(num(kv.at("d2_tilde")) - expected) <= 0.05);
        CHECK(kv.at("alpha_tilde_status") == "required");
        for (const char* key : {"omega2_tilde", "chi", "phi", "alpha_tilde", "ratio"}) {
            CHECK(kv.count(key) == 1);
        }
    }
}

TEST_CASE("analyze report")
{
    const Result r = run_cli({"analyze", "--alpha", "0.8", "--pp-db", "20", "--ps-db", "30"});
    REQUIRE(r.code == cli::kOk);
    auto kv = parse_report(r.out);
    CHECK(kv.at("branch") == "at_or_above_alpha_hat");
    CHECK(num(kv.at("pp_over_sigma2")) == doctest::Approx(100.0).epsilon(1e-14));
    CHECK(num(kv.at("alpha_hat")) == 0.75);
    CHECK(num(kv.at("p_d")) == doctest::Approx(0.034035062045242961).epsilon(1e-12));
}

TEST_CASE("simulate report")
{
    const Result r = run_cli({"simulate", "--trials", "20000", "--seed", "9", "--workers", "2"});
    REQUIRE(r.code == cli::kOk);
    auto kv = parse_report(r.out);
    CHECK(kv.at("trials") == "20000");
    CHECK(kv.at("seed") == "9");
    const double se = num(kv.at("f_os_stderr"));
    CHECK(std::abs(num(kv.at("f_os_mc")) - num(kv.at("f_os_analytic"))) <= 4.0 * se);
    CHECK(run_cli({"simulate", "--trials", "20000", "--seed", "9", "--workers", "1"}).out == r.out);
}

TEST_CASE("usage errors exit with 2")
{
    CHECK(run_cli({}).code == cli::kUsage);
    CHECK(run_cli({"analyze", "--bogus"}).code == cli::kUsage);
    CHECK(run_cli({"analyze", "--d2", "1"}).code == cli::kUsage);
    CHECK(run_cli({"analyze", "--alpha", "1.2"}).code == cli::kUsage);
    CHECK(run_cli({"analyze", "--d2", "0.5,0.8"}).code == cli::kUsage);
    CHECK(run_cli({"figure", "5"}).code == cli::kUsage);
    CHECK(run_cli({"figure", "2", "--d2", "0.8,1", "--trials", "0"}).code == cli::kUsage);
    CHECK(run_cli({"figure", "4", "--m", "0.3,1", "--trials", "0"}).code == cli::kUsage);
    CHECK(run_cli({"simulate", "--trials", "0"}).code == cli::kUsage);
    CHECK(run_cli({"analyze", "--config", "/nonexistent/file"}).code == cli::kUsage);
    const Result r = run_cli({"analyze", "--m", "0.2"});
    CHECK(r.code == cli::kUsage);
    CHECK(r.err.find("m must be") != std::string::npos);
    CHECK(run_cli({"--help"}).code == cli::kOk);
}

TEST_CASE("numeric-domain errors exit with 3")
{
    const Result r = run_cli({"critical", "--m", "5", "--pp-db", "3080"});
    CHECK(r.code == cli::kNumeric);
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("figure 2: default grid and flat branch")
{
    const Result r = run_cli({"figure", "2", "--n-antennas", "4", "--trials", "0"});
    REQUIRE(r.code == cli::kOk);
    const Table t = parse_csv(r.out);
    REQUIRE(t.size() == 1 + 3 * 100);
    CHECK(t[0] == std::vector<std::string>{"d2", "alpha", "f_op_analytic", "f_op_mc", "mc_stderr", "p_d"});
    CHECK(t[1][0] == "0.80000000000000004");
    CHECK(t[101][0] == "1.5");
    CHECK(t[201][0] == "3.25");
    CHECK(t[1][1] == "0");
    CHECK(t[100][1] == "0.98999999999999999");
    for (std::size_t block = 0; block < 3; ++block) {
        const auto& flat = t[1 + block * 100 + 75][2];
        for (std::size_t i = 75; i < 100; ++i) {
            const auto& row = t[1 + block * 100 + i];
            CHECK(row[2] == flat);
            CHECK(row[3].empty());
        }
    }
    CHECK(r.out.find('\r') == std::string::npos);
}

TEST_CASE("figure 2 with Monte Carlo columns")
{
    const Result r = run_cli({"figure", "2", "--alpha", "0.2,0.8", "--d2", "0.8,1.5", "--trials",
                              "20000", "--seed", "4"});
    REQUIRE(r.code == cli::kOk);
    const Table t = parse_csv(r.out);
    REQUIRE(t.size() == 5);
    for (std::size_t i = 1; i < t.size(); ++i) {
        CHECK(std::abs(num(t[i][3]) - num(t[i][2])) <= std::max(0.01, 4.0 * num(t[i][4])));
    }
    const Result again = run_cli({"figure", "2", "--alpha", "0.2,0.8", "--d2", "0.8,1.5",
                                  "--trials", "20000", "--seed", "4", "--workers", "3"});
    CHECK(again.out == r.out);
}

TEST_CASE("figure 3: secondary outage rises with alpha")
{
    const Result r = run_cli({"figure", "3", "--trials", "0"});
    REQUIRE(r.code == cli::kOk);
    const Table t = parse_csv(r.out);
    REQUIRE(t.size() == 1 + 3 * 100);
    CHECK(t[0] == std::vector<std::string>{"d2", "alpha", "f_os_analytic", "f_os_mc", "mc_stderr"});
    for (std::size_t block = 0; block < 3; ++block) {
        const double at_zero = num(t[1 + block * 100][2]);
        for (std::size_t i = 1; i < 100; ++i) {
            CHECK(num(t[1 + block * 100 + i][2]) >= at_zero);
        }
        CHECK(num(t[100 + block * 100][2]) > at_zero);
    }

    // alpha -> 1 leaves no power for the secondary's own data
    const Result lim = run_cli({"figure", "3", "--trials", "0", "--alpha", "0.999999"});
    const Table tl = parse_csv(lim.out);
    REQUIRE(tl.size() == 4);
    for (std::size_t i = 1; i < tl.size(); ++i) CHECK(num(tl[i][2]) > 0.99);
}

TEST_CASE("figure 4: both outages fall with m, m = 1 matches the Rayleigh forms")
{
    const Result r = run_cli({"figure", "4", "--trials", "0"});
    REQUIRE(r.code == cli::kOk);
    const Table t = parse_csv(r.out);
    REQUIRE(t.size() == 1 + 19);
    CHECK(t[0] == std::vector<std::string>{"m", "f_op_analytic", "f_os_analytic", "f_op_mc", "f_os_mc",
                                           "f_op_mc_stderr", "f_os_mc_stderr"});
    CHECK(t[1][0] == "0.5");
    CHECK(t[19][0] == "5");
    for (std::size_t i = 2; i < t.size(); ++i) {
        CHECK(num(t[i][1]) <= num(t[i - 1][1]));
        CHECK(num(t[i][2]) <= num(t[i - 1][2]));
    }
    SystemConfig c;
    c.m = 1.0;
    const AnalysisPoint o = rayleigh_oracle(c, derive_topology(c), derive_thresholds(c));
    CHECK(num(t[3][0]) == 1.0);
    CHECK(num(t[3][1]) == doctest::Approx(o.f_op).epsilon(1e-12));
    CHECK(num(t[3][2]) == doctest::Approx(o.f_os).epsilon(1e-12));
}

TEST_CASE("--out and --plot-script write files")
{
    const auto csv = temp_path("fig4.csv");
    const auto gp = temp_path("fig4.gp");
    const Result r = run_cli({"figure", "4", "--trials", "0", "--m", "0.5,1", "--out", csv.string(),
                              "--plot-script", gp.string()});
    REQUIRE(r.code == cli::kOk);
    CHECK(r.out.empty());
    std::ifstream in(csv);
    std::stringstream body;
    body << in.rdbuf();
    CHECK(parse_csv(body.str()).size() == 3);
    std::ifstream script(gp);
    std::stringstream s;
    s << script.rdbuf();
    CHECK(s.str().find(csv.string()) != std::string::npos);
    std::filesystem::remove(csv);
    std::filesystem::remove(gp);
}

TEST_CASE("config file, overridden by flags")
{
    const auto path = temp_path("config.txt");
    {
        std::ofstream f(path);
        f << "# scenario\n"
          << "n_antennas = 4\n"
          << "m=1.0\n"
          << "pp_over_sigma2 = 1000   # 30 dB\n"
          << "\n"
          << "alpha = 0.3\n";
    }
    auto kv = parse_report(run_cli({"analyze", "--config", path.string()}).out);
    CHECK(kv.at("n_antennas") == "4");
    CHECK(kv.at("m") == "1");
    CHECK(kv.at("pp_over_sigma2") == "1000");
    CHECK(kv.at("alpha") == "0.29999999999999999");

    kv = parse_report(run_cli({"analyze", "--config", path.string(), "--n-antennas", "1", "--pp-db", "20"}).out);
    CHECK(kv.at("n_antennas") == "1");
    CHECK(kv.at("pp_over_sigma2") == "100");
    CHECK(kv.at("m") == "1");

    {
        std::ofstream f(path);
        f << "gain = 3\n";
    }
    CHECK(run_cli({"analyze", "--config", path.string()}).code == cli::kUsage);
    {
        std::ofstream f(path);
        f << "m = fast\n";
    }
    CHECK(run_cli({"analyze", "--config", path.string()}).code == cli::kUsage);
    std::filesystem::remove(path);
}

TEST_CASE("read_config keeps unspecified fields")
{
    std::istringstream in("d2 = 1.5\n");
    SystemConfig base;
    base.m = 2.0;
    const SystemConfig c = read_config(in, base);
    CHECK(c.d2 == 1.5);
    CHECK(c.m == 2.0);
}

TEST_CASE("default grids")
{
    CHECK(default_alpha_grid().size() == 100);
    CHECK(default_m_grid().size() == 19);
    SystemConfig c;
    c.n_antennas = 4;
    CHECK(default_d2_set(c) == std::vector<double>{0.8, 1.5, 3.25});
    c.n_antennas = 2;
    CHECK(default_d2_set(c) == std::vector<double>{0.8, 1.5, 2.625});
    c.n_antennas = 1;
    const auto d = default_d2_set(c);
    REQUIRE(d.size() == 3);
    CHECK(d[2] == doctest::Approx(critical_omega2(c, derive_topology(c), derive_thresholds(c)).d2_tilde));
    CHECK(db_to_linear(20.0) == doctest::Approx(100.0).epsilon(1e-15));
}
