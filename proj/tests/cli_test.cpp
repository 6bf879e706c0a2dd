// Copyright 2026 The entcrit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Runs the entcrit executable as a subprocess.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string command = std::string(ENTCRIT_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult result;
    FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) return result;
    std::array<char, 4096> buffer{};
    std::size_t n = 0;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) result.out.append(buffer.data(), n);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string fixture(const std::string& name) { return std::string(ENTCRIT_TEST_DATA) + "/" + name; }

}  // namespace

TEST(Cli, CheckSinglet) {
    const RunResult r = run("check --state " + fixture("singlet.json") + " --criteria ppt,ccn,lur");
    ASSERT_EQ(r.exit_code, 0);
    const auto doc = nlohmann::json::parse(r.out);
    ASSERT_EQ(doc["reports"].size(), 3u);
    for (const auto& report : doc["reports"]) EXPECT_TRUE(report["detected"].get<bool>()) << report.dump();
    EXPECT_EQ(doc["reports"][0]["criterion"], "ppt");
    EXPECT_NEAR(doc["reports"][1]["value"].get<double>(), 2.0, 1e-10);
    EXPECT_TRUE(doc.contains("meta"));
    EXPECT_EQ(doc["meta"]["seed"], 2026);
}

TEST(Cli, CheckMaximallyMixed) {
    const RunResult r = run("check --state " + fixture("maximally_mixed.json") + " --criteria all");
    ASSERT_EQ(r.exit_code, 0);
    const auto doc = nlohmann::json::parse(r.out);
    ASSERT_EQ(doc["reports"].size(), 5u);
    for (const auto& report : doc["reports"]) EXPECT_FALSE(report["detected"].get<bool>()) << report.dump();
}

TEST(Cli, CriterionErrorExitsOne) {
    // The nonlinear witness needs equal subsystem dimensions.
    const RunResult r = run("check --state " + fixture("maximally_mixed_2x3.json") + " --criteria ppt,nonlinear");
    EXPECT_EQ(r.exit_code, 1);
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_FALSE(doc["reports"][0]["detected"].get<bool>());
    EXPECT_TRUE(doc["reports"][1].contains("error"));
}

TEST(Cli, InputErrorsExitTwo) {
    EXPECT_EQ(run("check --state " + fixture("malformed.json")).exit_code, 2);
    EXPECT_EQ(run("check --state " + fixture("does_not_exist.json")).exit_code, 2);
    EXPECT_EQ(run("check --state " + fixture("singlet.json") + " --criteria bogus").exit_code, 2);
    EXPECT_EQ(run("scan --family werner --criterion ccn").exit_code, 2);
    EXPECT_EQ(run("scan --family tiles --criterion bogus").exit_code, 2);
    EXPECT_EQ(run("scan --family noisy_singlet --criterion ccn --bracket 0.5 1").exit_code, 2);
    EXPECT_EQ(run("frobnicate").exit_code, 2);
}

TEST(Cli, InvalidStateReportsDefects) {
    const RunResult r = run("check --state " + fixture("not_positive.json"));
    EXPECT_EQ(r.exit_code, 2);
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_FALSE(doc["validity"]["valid"].get<bool>());
    EXPECT_NEAR(doc["validity"]["min_eigenvalue"].get<double>(), -0.5, 1e-12);
}

TEST(Cli, CheckIsDeterministicWithoutMeta) {
    const std::string args = "--no-meta check --state " + fixture("singlet.json") + " --criteria all";
    const RunResult a = run(args);
    const RunResult b = run(args);
    ASSERT_EQ(a.exit_code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_FALSE(nlohmann::json::parse(a.out).contains("meta"));
}

TEST(Cli, Scan) {
    const RunResult r = run("scan --family noisy_singlet --criterion ccn --tol 1e-4");
    ASSERT_EQ(r.exit_code, 0);
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_NEAR(doc["threshold"].get<double>(), 0.292, 1e-3);
    EXPECT_FALSE(doc["monotonicity_warning"].get<bool>());

    const RunResult fixed = run("scan --family noisy_singlet --criterion lur_fixed");
    ASSERT_EQ(fixed.exit_code, 0);
    EXPECT_NEAR(nlohmann::json::parse(fixed.out)["threshold"].get<double>(), 0.250, 1e-3);

    const RunResult tiles = run("scan --family tiles --criterion ccn --bracket 0.5 1");
    ASSERT_EQ(tiles.exit_code, 0);
    EXPECT_NEAR(nlohmann::json::parse(tiles.out)["threshold"].get<double>(), 0.8897, 5e-4);
}

TEST(Cli, DemoJson) {
    const RunResult r = run("demo --json");
    EXPECT_EQ(r.exit_code, 0);
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_TRUE(doc["all_pass"].get<bool>());
    EXPECT_EQ(doc["rows"].size(), 11u);
}

TEST(Cli, DemoNegativeControl) {
    // A detection margin of 0.1 swallows the boundary rows.
    const RunResult r = run("--tol-detect 0.1 demo --json");
    EXPECT_EQ(r.exit_code, 1);
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_FALSE(doc["all_pass"].get<bool>());
}
