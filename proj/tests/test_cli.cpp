// SPDX-License-Identifier: Apache-2.0
//
// rischan - stochastic channel simulator for RIS-assisted mmWave MIMO links
// Copyright (C) 2026 The rischan authors
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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "rischan/rischan.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = RISCHAN_CLI;
const fs::path kScenes = RISCHAN_SCENES_DIR;

int run(const std::string& args)
{
    const std::string cmd = kCli + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / ("rischan_cli_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string scene(const std::string& name) { return (kScenes / name).string(); }

} // namespace

TEST(Cli, ValidateAcceptsShippedScenes)
{
    EXPECT_EQ(run("validate --config " + scene("indoor.ini")), 0);
    EXPECT_EQ(run("validate --config " + scene("outdoor.ini")), 0);
    EXPECT_EQ(run("validate --config " + scene("indoor_two_ris.ini")), 0);
}

TEST(Cli, ConfigErrorsExitWithOne)
{
    const fs::path dir = scratch("bad");
    std::ofstream(dir / "bad.ini") << "[scene]\nrealizations = 0\n";
    EXPECT_EQ(run("validate --config " + (dir / "bad.ini").string()), 1);
    std::ofstream(dir / "typo.ini") << "[scene]\nrealisations = 5\n";
    EXPECT_EQ(run("run --config " + (dir / "typo.ini").string()), 1);
    EXPECT_EQ(run("run --config " + scene("indoor.ini") + " --set scene.frequency_ghz=-1"), 1);
    EXPECT_EQ(run("run --config " + scene("indoor.ini") + " --set tx.count=0"), 1);
    EXPECT_EQ(run("run --config /nonexistent.ini"), 1);
    EXPECT_EQ(run("frobnicate"), 1);
    EXPECT_EQ(run(""), 1);
    fs::remove_all(dir);
}

TEST(Cli, LaterShapeOverrideReplacesEarlierOne)
{
    EXPECT_EQ(run("validate --config " + scene("indoor.ini") + " --set tx.rows=2 --set tx.cols=2 --set tx.count=3"), 0);
    EXPECT_EQ(run("validate --config " + scene("indoor.ini") + " --set ris0.elements=100 --set ris0.rows=4 --set ris0.cols=8"),
              0);
}

TEST(Cli, RuntimeErrorsExitWithTwo)
{
    // output path below a regular file cannot be created
    const fs::path dir = scratch("rt");
    std::ofstream(dir / "file") << "x";
    EXPECT_EQ(run("run --config " + scene("indoor.ini") + " --realizations 2 --out " + (dir / "file" / "s.csv").string()),
              2);
    fs::remove_all(dir);
}

TEST(Cli, RunWritesStatisticsWithHash)
{
    const fs::path dir = scratch("run");
    ASSERT_EQ(run("run --config " + scene("indoor.ini") + " --realizations 5 --set campaign.values=30,40 --out " +
                  (dir / "s.csv").string()),
              0);
    const rischan::StatisticsFile f = rischan::read_statistics_csv(dir / "s.csv");
    ASSERT_EQ(f.points.size(), 2u);
    EXPECT_EQ(f.points[0].n, 5);
    const rischan::Scenario sc = rischan::parse_scenario_file(
        kScenes / "indoor.ini", {"scene.realizations=5", "campaign.values=30,40"});
    EXPECT_EQ(f.config_hash, rischan::hash_hex(rischan::config_hash(sc)));
    fs::remove_all(dir);
}

TEST(Cli, OutputsAreIdenticalAcrossThreadCounts)
{
    const fs::path dir = scratch("threads");
    const std::string base = "--config " + scene("indoor_two_ris.ini") + " --realizations 3 --set campaign.cell=10";
    ASSERT_EQ(run("coverage " + base + " --threads 1 --out " + (dir / "c1.csv").string()), 0);
    ASSERT_EQ(run("coverage " + base + " --threads 4 --out " + (dir / "c4.csv").string()), 0);
    EXPECT_EQ(slurp(dir / "c1.csv"), slurp(dir / "c4.csv"));
    EXPECT_EQ(rischan::read_coverage_csv(dir / "c1.csv").cells.size(), 30u);
    fs::remove_all(dir);
}

TEST(Cli, DumpChannelsWritesManifest)
{
    const fs::path dir = scratch("dump");
    ASSERT_EQ(run("dump-channels --config " + scene("indoor.ini") + " --count 2 --out " + (dir / "d").string()), 0);
    EXPECT_TRUE(fs::exists(dir / "d" / "manifest.json"));
    EXPECT_TRUE(fs::exists(dir / "d" / "r000001_ris0_G.bin"));
    EXPECT_EQ(fs::file_size(dir / "d" / "r000000_ris0_H.bin"), 64u * 4u * 16u);
    EXPECT_EQ(run("dump-channels --config " + scene("indoor.ini")), 1); // --out is required
    fs::remove_all(dir);
}
