// Copyright 2026 The modgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Drives the modgate executable as a subprocess.

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "json.hpp"

namespace {

struct CliRun {
    int code;
    std::string out;
};

CliRun run(const std::string &args) {
    std::string cmd = std::string(MODGATE_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE *p = popen(cmd.c_str(), "r");
    if (p == nullptr) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

nlohmann::json json_line(const CliRun &r) { return nlohmann::json::parse(r.out.substr(0, r.out.find('\n'))); }

std::string read_file(const std::filesystem::path &p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::filesystem::path scratch(const std::string &name) {
    auto dir = std::filesystem::temp_directory_path() / "modgate_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST(cli, eval_identity_gate) {
    CliRun r = run("eval --scenario xpm-epsilon --phi 0 --a 0 --eps 0.1 --alpha 0.05 --format json-lines");
    ASSERT_EQ(r.code, 0);
    auto j = json_line(r);
    EXPECT_NEAR(j["nm_re"].get<double>(), 1, 1e-15);
    EXPECT_NEAR(j["nm_im"].get<double>(), 0, 1e-15);
    EXPECT_NEAR(j["p"].get<double>(), std::pow(std::sin(0.1), 2), 1e-15);
}

TEST(cli, eval_generic_ground_state) {
    CliRun r = run("eval --scenario generic --theta 0 --pre 0.6,0,0.8,0 --post 1,0,0,0 --matrix 0,0,1,0,1,0,0,0 "
                "--format json-lines");
    ASSERT_EQ(r.code, 0);
    auto j = json_line(r);
    EXPECT_NEAR(j["p"].get<double>(), 0.36, 1e-15);
    EXPECT_NEAR(j["final"][0].get<double>(), 1, 1e-15);
}

TEST(cli, eval_absorption_dominant) {
    CliRun r = run("eval --scenario xpm-delta --phi 0 --a 1e-2 --delta 1e-3 --alpha 0.05 --format json-lines");
    ASSERT_EQ(r.code, 0);
    auto j = json_line(r);
    EXPECT_NEAR(j["nm_abs"].get<double>(), 9.99979332303566605, 1e-8);
    EXPECT_EQ(j["regime"], "delta-abs-dominant");
}

TEST(cli, eval_text_and_csv_outputs) {
    CliRun text = run("eval --scenario xpm-epsilon --eps 0.1");
    ASSERT_EQ(text.code, 0);
    EXPECT_NE(text.out.find("nm_abs: "), std::string::npos);
    CliRun csv = run("eval --scenario xpm-epsilon --eps 0.1 --format csv");
    ASSERT_EQ(csv.code, 0);
    EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 2);
}

TEST(cli, exit_codes) {
    EXPECT_EQ(run("eval --scenario xpm-epsilon --eps 0 --alpha 0.05").code, 3);
    EXPECT_EQ(run("eval --scenario generic --theta 1 --pre 1,0,0,0 --post 0,0,1,0").code, 3);
    // <f|N|i> = 0 with <f|i> != 0 and the control always firing.
    EXPECT_EQ(run("eval --scenario generic --theta 3.141592653589793 --pre 1,0,0,0 --post 1,0,1,0 "
                  "--matrix 1,0,0,0,-1,0,0,0").code,
              4);
    EXPECT_EQ(run("eval --scenario xpm-epsilon --eps 0.1 --alpha 0.5").code, 2);
    EXPECT_EQ(run("eval --scenario bogus").code, 2);
    EXPECT_EQ(run("eval --theta nope").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("sweep --eps 0.1 --format xml").code, 2);
    EXPECT_EQ(run("eval --config /nonexistent/modgate.json").code, 5);
    EXPECT_EQ(run("sweep --eps 0.1 --out /nonexistent/dir/out.csv").code, 5);
    EXPECT_EQ(run("sample --scenario generic --theta 1 --pre 1,0,0,0 --post 0,0,1,0").code, 4);
    EXPECT_EQ(run("report --regime eps-dominant --eps 1e-3").code, 2);
    EXPECT_EQ(run("--help").code, 0);
}

TEST(cli, sweep_file_is_deterministic) {
    auto a = scratch("a.csv"), b = scratch("b.csv");
    std::string args = "sweep --phi 1e-6:1e-4:3:log --a 0,1e-4,1e-3 --eps 1e-2 --alpha 0.05 --out ";
    ASSERT_EQ(run(args + a.string()).code, 0);
    ASSERT_EQ(run(args + b.string() + " --threads 1").code, 0);
    std::string first = read_file(a);
    EXPECT_EQ(first, read_file(b));
    EXPECT_EQ(std::count(first.begin(), first.end(), '\n'), 10);
    EXPECT_EQ(first.rfind("scenario,phi,a,", 0), 0u);
}

TEST(cli, sweep_from_config) {
    CliRun r = run("sweep --config " + std::string(MODGATE_SAMPLES_DIR) + "/xpm_eps_sweep.json --out -");
    ASSERT_EQ(r.code, 0);
    EXPECT_GT(std::count(r.out.begin(), r.out.end(), '\n'), 1);
}

TEST(cli, sample_is_reproducible) {
    std::string args = "sample --scenario xpm-epsilon --phi 0.3 --a 0.1 --eps 0.1 --alpha 0.2 --trials 20000 "
                       "--format json-lines --seed ";
    CliRun a = run(args + "9"), b = run(args + "9"), c = run(args + "10");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out, c.out);
    auto j = json_line(a);
    EXPECT_EQ(j["seed"], 9);
    EXPECT_LE(std::abs(j["p_hat"].get<double>() - j["p_exact"].get<double>()), 4 * j["p_stderr"].get<double>());
}

TEST(cli, report_lists_measured_constants) {
    CliRun r = run("report --regime lossless");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("eps = 0.01: measured amplification"), std::string::npos);
    EXPECT_NE(r.out.find("eps = 0.001: measured amplification"), std::string::npos);
    EXPECT_EQ(r.out.find("[FAIL]"), std::string::npos);

    CliRun all = run("report");
    ASSERT_EQ(all.code, 0);
    EXPECT_EQ(all.out.find("[FAIL]"), std::string::npos);
    EXPECT_NE(all.out.find("delta-abs-dominant"), std::string::npos);
}
