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

// rischan command line front end.
//
//   rischan run           --config scene.ini [--out stats.csv]
//   rischan coverage      --config scene.ini [--out coverage.csv]
//   rischan dump-channels --config scene.ini --out dir [--count n]
//   rischan validate      --config scene.ini
//
// Any config field can be overridden with --set section.key=value (repeatable).
// Exit status: 0 success, 1 configuration error, 2 runtime error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rischan/rischan.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct CommonOptions {
    std::string config;
    std::vector<std::string> sets;
    std::string out;
    long long seed = -1;
    long long realizations = -1;
    long long threads = -1;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool out_required = false)
{
    cmd->add_option("-c,--config", o.config, "scenario INI file")->required()->check(CLI::ExistingFile);
    cmd->add_option("-s,--set", o.sets, "override a field, section.key=value")->allow_extra_args(false);
    auto* out = cmd->add_option("-o,--out", o.out, "output path");
    if (out_required)
        out->required();
    cmd->add_option("--seed", o.seed, "master seed")->check(CLI::NonNegativeNumber);
    cmd->add_option("--realizations", o.realizations, "realizations per point");
    cmd->add_option("--threads", o.threads, "worker threads");
}

// Set once the scenario has been read and validated. Failures before that
// point are configuration errors whatever their code.
bool g_configured = false;

rischan::Scenario load(const CommonOptions& o)
{
    std::vector<std::string> sets = o.sets;
    if (o.seed >= 0)
        sets.push_back("scene.seed=" + std::to_string(o.seed));
    if (o.realizations >= 0)
        sets.push_back("scene.realizations=" + std::to_string(o.realizations));
    if (o.threads >= 0)
        sets.push_back("campaign.threads=" + std::to_string(o.threads));
    return rischan::parse_scenario_file(o.config, sets);
}

void print_warnings(const rischan::ValidatedConfig& v)
{
    for (const auto& w : v.warnings)
        std::cerr << "warning: " << w << '\n';
}

int cmd_run(const CommonOptions& o)
{
    const rischan::Scenario sc = load(o);
    const rischan::Campaign campaign = rischan::make_campaign(sc);
    g_configured = true;
    print_warnings(campaign.config);
    const rischan::RateStatistics stats = rischan::run_campaign(campaign);
    const std::uint64_t hash = rischan::config_hash(sc);
    if (!o.out.empty()) {
        rischan::write_statistics_csv(o.out, stats, hash);
        return 0;
    }
    std::printf("# config_hash=%s\n%s\n", rischan::hash_hex(hash).c_str(), rischan::kStatisticsHeader);
    for (const auto& p : stats.points)
        std::printf("%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", p.sweep_value, p.mean, p.std, p.p5, p.p95, p.n);
    return 0;
}

int cmd_coverage(const CommonOptions& o)
{
    const rischan::Scenario sc = load(o);
    const rischan::Campaign campaign = rischan::make_campaign(sc);
    g_configured = true;
    print_warnings(campaign.config);
    const rischan::CoverageGrid grid = rischan::coverage_map(campaign, sc.campaign.grid);
    const std::uint64_t hash = rischan::config_hash(sc);
    if (!o.out.empty()) {
        rischan::write_coverage_csv(o.out, grid, hash);
        return 0;
    }
    std::printf("# config_hash=%s\n%s\n", rischan::hash_hex(hash).c_str(), rischan::kCoverageHeader);
    for (const auto& c : grid.cells)
        std::printf("%.17g,%.17g,%.17g,%d\n", c.x, c.y, c.mean_rate, c.ris_index);
    return 0;
}

int cmd_dump(const CommonOptions& o, long long count)
{
    const rischan::Scenario sc = load(o);
    const rischan::ValidatedConfig v = rischan::validate_config(sc.sim);
    g_configured = true;
    print_warnings(v);
    const rischan::Scene scene(v);
    const std::size_t n = count > 0 ? static_cast<std::size_t>(count) : static_cast<std::size_t>(sc.sim.realizations);
    rischan::dump_channels(scene, n, o.out, rischan::config_hash(sc), sc.campaign.threads);
    std::cout << "wrote " << n << " realizations to " << o.out << '\n';
    return 0;
}

int cmd_validate(const CommonOptions& o)
{
    const rischan::Scenario sc = load(o);
    const rischan::ValidatedConfig v = rischan::validate_config(sc.sim);
    print_warnings(v);
    std::cout << "# config_hash=" << rischan::hash_hex(rischan::config_hash(sc)) << '\n'
              << "# wavelength_m=" << v.wavelength << '\n'
              << rischan::canonical_text(sc);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"rischan: stochastic channel simulator for RIS-assisted mmWave MIMO links"};
    app.require_subcommand(1);

    CommonOptions run_opts, cov_opts, dump_opts, val_opts;
    long long dump_count = 0;
    auto* run = app.add_subcommand("run", "Monte Carlo rate statistics over the configured sweep");
    add_common(run, run_opts);
    auto* cov = app.add_subcommand("coverage", "mean rate over the Rx grid");
    add_common(cov, cov_opts);
    auto* dump = app.add_subcommand("dump-channels", "write H, G, D per realization as binary files");
    add_common(dump, dump_opts, true);
    dump->add_option("-n,--count", dump_count, "number of realizations (default: scene.realizations)");
    auto* val = app.add_subcommand("validate", "check a scenario and print its canonical form");
    add_common(val, val_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run)
            return cmd_run(run_opts);
        if (*cov)
            return cmd_coverage(cov_opts);
        if (*dump)
            return cmd_dump(dump_opts, dump_count);
        return cmd_validate(val_opts);
    } catch (const rischan::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return !g_configured || e.is_config_error() ? kExitConfig : kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return g_configured ? kExitRuntime : kExitConfig;
    }
}
