// SPDX-License-Identifier: Apache-2.0
//
// relaymimo: hybrid-detection massive MIMO relay uplink toolkit
// Copyright (C) 2026 The relaymimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "relaymimo/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace relaymimo;
namespace fs = std::filesystem;

namespace
{

struct Result
{
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "relaymimo");
    std::vector<const char *> argv;
    for (const auto &a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli_main(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test
{
  protected:
    fs::path dir;

    void SetUp() override
    {
        dir = fs::temp_directory_path() /
              ("relaymimo_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    std::string write(const std::string &name, const std::string &text)
    {
        const auto p = dir / name;
        std::ofstream(p) << text;
        return p.string();
    }

    static std::string slurp(const fs::path &p)
    {
        std::ifstream f(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
    }
};

const char *kSmall = "K = 2\nN_d = 16\nN_r = 16\np_u_db = 10\np_r_db = 10\n[run]\ntrials = 40\nseed = 3\n";

} // namespace

TEST_F(CliTest, MissingConfigFileIsConfigError)
{
    const auto r = run({"simulate", "--config", (dir / "nope.ini").string()});
    EXPECT_EQ(r.code, kExitConfig);
    EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST_F(CliTest, MissingConfigOptionIsConfigError)
{
    EXPECT_EQ(run({"bound"}).code, kExitConfig);
}

TEST_F(CliTest, BadUsage)
{
    EXPECT_EQ(run({}).code, kExitConfig);
    EXPECT_EQ(run({"launch"}).code, kExitConfig);
    EXPECT_EQ(run({"figure", "fig7"}).code, kExitConfig);
    EXPECT_EQ(run({"simulate", "--trials", "many"}).code, kExitConfig);
    EXPECT_EQ(run({"stats", "--check", "lemma9"}).code, kExitConfig);
}

TEST_F(CliTest, Help)
{
    const auto r = run({"--help"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("simulate"), std::string::npos);
}

TEST_F(CliTest, InvalidConfigContent)
{
    const auto cfg = write("bad.ini", "K = 2\nN_d = 16\nwhatever = 1\n");
    EXPECT_EQ(run({"bound", "--config", cfg}).code, kExitConfig);
}

TEST_F(CliTest, Bound)
{
    const auto cfg = write("ref.ini", "K = 5\nN_d = 128\nN_r = 128\np_u = 100\np_r = 100\n");
    const auto r = run({"bound", "--config", cfg});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("k,xi_k,chi_r,chi_d,rate_bound\n"), std::string::npos);
    EXPECT_NE(r.out.find("\n1,1,100,100,5.26588"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("sum,,,,26.3294"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("# K = 5\n"), std::string::npos);
}

TEST_F(CliTest, Simulate)
{
    const auto cfg = write("small.ini", kSmall);
    const auto r = run({"simulate", "--config", cfg});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("# trials = 40\n"), std::string::npos);
    EXPECT_NE(r.out.find("# seed = 3\n"), std::string::npos);
    EXPECT_NE(r.out.find("k,mc_rate,mc_se,rate_bound\n"), std::string::npos);
    EXPECT_NE(r.out.find("\nsum,"), std::string::npos);

    const auto full = run({"simulate", "--config", cfg, "--receiver", "full_rf", "--trials", "20"});
    ASSERT_EQ(full.code, kExitOk) << full.err;
    EXPECT_NE(full.out.find("# receiver = full_rf\n"), std::string::npos);
    EXPECT_NE(full.out.find("# trials = 20\n"), std::string::npos);
}

TEST_F(CliTest, SimulateWritesOutFile)
{
    const auto cfg = write("small.ini", kSmall);
    const auto path = (dir / "sim.csv").string();
    const auto r = run({"simulate", "--config", cfg, "--out", path});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_TRUE(r.out.empty());
    EXPECT_NE(slurp(path).find("k,mc_rate,mc_se,rate_bound\n"), std::string::npos);
}

TEST_F(CliTest, ByteIdenticalAcrossWorkers)
{
    const auto cfg = write("small.ini", kSmall);
    const auto a = run({"simulate", "--config", cfg, "--workers", "1"});
    const auto b = run({"simulate", "--config", cfg, "--workers", "4"});
    const auto c = run({"simulate", "--config", cfg, "--workers", "1"});
    ASSERT_EQ(a.code, kExitOk);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out, c.out);
}

TEST_F(CliTest, NumericalFailure)
{
    const auto cfg = write("dead.ini", "K = 2\nN_d = 8\nN_r = 8\nxi = 1, 0\n[run]\ntrials = 10\n");
    const auto r = run({"simulate", "--config", cfg});
    EXPECT_EQ(r.code, kExitNumerical);
    EXPECT_NE(r.err.find("numerical error"), std::string::npos);
}

TEST_F(CliTest, StatsPassAndCsv)
{
    const auto r = run({"stats", "--check", "theorem1", "--trials", "20000", "--seed", "1"});
    ASSERT_EQ(r.code, kExitOk) << r.out << r.err;
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "name,estimate_re,estimate_im,std_error,target,trials,z");
    EXPECT_NE(r.out.find("\ntheorem1_cross,"), std::string::npos);
    EXPECT_NE(r.out.find("\ntheorem1_same,"), std::string::npos);
    EXPECT_NE(r.out.find("\ntheorem1_cross_b3,"), std::string::npos);
}

TEST_F(CliTest, StatsFailureExitCode)
{
    // at this size the noise statistics sit well above their large-array limits
    const auto cfg = write("tiny.ini", "K = 2\nN_d = 16\nN_r = 16\n");
    const auto r = run({"stats", "--config", cfg, "--check", "lemma34", "--trials", "50", "--seed", "1"});
    EXPECT_EQ(r.code, kExitCheckFailed) << r.out;
    EXPECT_NE(r.out.find("\nlemma3_k1,"), std::string::npos);
}

TEST_F(CliTest, PaSolve)
{
    const auto cfg = write("pa.ini", "K = 3\nN_d = 128\nN_r = 128\nxi = 2, 1, 0.5\np_r = 10\np_t = 10\n");
    const auto r = run({"pa", "solve", "--config", cfg});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("k,xi_k,mu_optimal,mu_waterfilling,mu_equal\n"), std::string::npos);
    EXPECT_NE(r.out.find("\nsum_rate,,10.2327"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("\nkkt_residual,,"), std::string::npos);
    EXPECT_NE(r.out.find("# status = optimal\n"), std::string::npos);
}

TEST_F(CliTest, PaNeedsBudget)
{
    const auto cfg = write("pa.ini", "K = 2\nN_d = 16\nN_r = 16\n");
    EXPECT_EQ(run({"pa", "solve", "--config", cfg}).code, kExitConfig);
    EXPECT_EQ(run({"pa"}).code, kExitConfig);
}

TEST_F(CliTest, PaCompare)
{
    const auto cfg = write("pa.ini", "K = 3\nN_d = 32\nN_r = 32\nxi = 2, 1, 0.5\np_r = 10\np_t = 10\n");
    const auto r = run({"pa", "compare", "--config", cfg, "--trials", "10"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("\nmc_sum_rate,,"), std::string::npos);
}

TEST_F(CliTest, FigureWritesCsv)
{
    const auto out = (dir / "d").string();
    const auto r = run({"figure", "fig2", "--trials", "3", "--seed", "7", "--out", out});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto text = slurp(fs::path(out) / "fig2.csv");
    EXPECT_NE(text.find("\nsweep,value,mc_sum_rate,mc_se,analytic_sum_rate\n"), std::string::npos);
    EXPECT_NE(text.find("# seed = 7\n"), std::string::npos);
    EXPECT_NE(text.find("\nN_d,256,"), std::string::npos);
}

TEST_F(CliTest, BinaryExitCodes)
{
    const std::string exe = RELAYMIMO_CLI_PATH;
    ASSERT_TRUE(fs::exists(exe));
    const std::string quiet = " > /dev/null 2>&1";
    EXPECT_EQ(WEXITSTATUS(std::system((exe + " bound --config " + (dir / "nope.ini").string() + quiet).c_str())), 2);
    const auto cfg = write("ref.ini", "K = 5\nN_d = 128\nN_r = 128\np_u = 100\np_r = 100\n");
    EXPECT_EQ(WEXITSTATUS(std::system((exe + " bound --config " + cfg + quiet).c_str())), 0);
}
