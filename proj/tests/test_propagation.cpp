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

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rischan/propagation.hpp"

using namespace rischan;

namespace {

const Environment kInH = environment_preset(EnvironmentKind::InHIndoorOffice);
const Environment kUMi = environment_preset(EnvironmentKind::UMiStreetCanyon);

Environment without_shadowing(Environment env)
{
    env.los.shadow_sigma_db = 0.0;
    env.nlos.shadow_sigma_db = 0.0;
    return env;
}

} // namespace

TEST(Propagation, UmiLosProbability)
{
    EXPECT_NEAR(los_probability(18.0, kUMi), 1.0, 1e-15);
    EXPECT_NEAR(los_probability(36.0, kUMi), 0.6839, 5e-5);
    EXPECT_NEAR(los_probability(5.0, kUMi), 1.0, 1e-15);
}

TEST(Propagation, InhLosProbabilitySegments)
{
    EXPECT_DOUBLE_EQ(los_probability(1.0, kInH), 1.0);
    EXPECT_NEAR(los_probability(4.0, kInH), std::exp(-(4.0 - 1.2) / 4.7), 1e-15);
    EXPECT_NEAR(los_probability(20.0, kInH), 0.32 * std::exp(-(20.0 - 6.5) / 32.6), 1e-15);
}

TEST(Propagation, LosProbabilityIsAProbabilityAndDecays)
{
    for (const Environment* env : {&kInH, &kUMi}) {
        double prev = 1.0;
        for (double d = 0.5; d < 5000.0; d *= 1.1) {
            const double p = los_probability(d, *env);
            ASSERT_GE(p, 0.0);
            ASSERT_LE(p, 1.0);
            ASSERT_LE(p, prev + 1e-15);
            prev = p;
        }
        EXPECT_LT(los_probability(1e5, *env), 1e-3);
    }
}

TEST(Propagation, InhLosPathLossExample)
{
    RngStream rng(1);
    const Environment env = without_shadowing(kInH);
    EXPECT_NEAR(path_loss_db(10.0, 28e9, env.los), 78.64, 5e-3);
    EXPECT_NEAR(path_loss(10.0, 28e9, env, true, rng), 1.37e-8, 5e-11);
}

TEST(Propagation, PathLossWithoutShadowingIsDeterministic)
{
    const Environment env = without_shadowing(kInH);
    RngStream a(1), b(2);
    EXPECT_EQ(path_loss(23.0, 28e9, env, false, a), path_loss(23.0, 28e9, env, false, b));
}

TEST(Propagation, DoublingDistanceAddsExponentTimesLog2)
{
    for (const auto* c : {&kInH.los, &kInH.nlos, &kUMi.los, &kUMi.nlos}) {
        const double delta = path_loss_db(40.0, 28e9, *c) - path_loss_db(20.0, 28e9, *c);
        EXPECT_NEAR(delta, c->distance_exponent * std::log10(2.0), 1e-12);
    }
}

TEST(Propagation, ShadowingHasTheConfiguredSpread)
{
    RngStream rng(5);
    const int n = 40000;
    double s = 0.0, s2 = 0.0;
    const double base = path_loss_db(30.0, 28e9, kInH.nlos);
    for (int i = 0; i < n; ++i) {
        const double pl = -10.0 * std::log10(path_loss(30.0, 28e9, kInH, false, rng)) - base;
        s += pl;
        s2 += pl * pl;
    }
    const double mean = s / n;
    EXPECT_NEAR(mean, 0.0, 0.15);
    EXPECT_NEAR(std::sqrt(s2 / n - mean * mean), kInH.nlos.shadow_sigma_db, 0.15);
}

TEST(Propagation, NonPositiveDistanceThrows)
{
    RngStream rng(1);
    EXPECT_THROW(los_probability(0.0, kInH), Error);
    EXPECT_THROW(path_loss(-1.0, 28e9, kInH, true, rng), Error);
    EXPECT_THROW(draw_link_state(0.0, 28e9, kInH, rng), Error);
}

TEST(Propagation, CertainLosAlwaysDrawsLos)
{
    RngStream rng(9);
    for (int i = 0; i < 1000; ++i) {
        const LinkState s = draw_link_state(1.0, 28e9, kInH, rng);
        ASSERT_TRUE(s.los);
        ASSERT_GT(s.attenuation, 0.0);
        ASSERT_GE(s.phase, 0.0);
        ASSERT_LT(s.phase, 2.0 * kPi);
    }
}

TEST(Propagation, ForcedModes)
{
    RngStream rng(9);
    EXPECT_FALSE(draw_link_state(1.0, 28e9, kInH, rng, LinkMode::ForcedBlocked).los);
    EXPECT_EQ(draw_link_state(1.0, 28e9, kInH, rng, LinkMode::ForcedBlocked).attenuation, 0.0);
    EXPECT_TRUE(draw_link_state(500.0, 28e9, kInH, rng, LinkMode::ForcedPresent).los);
}

TEST(Propagation, EmpiricalLosFrequencyMatches)
{
    RngStream rng = spawn_rng(42, 0, LinkTag::Calibration);
    for (double d : {3.0, 12.0, 40.0}) {
        const double p = los_probability(d, kInH);
        const int n = 10000;
        int hits = 0;
        for (int i = 0; i < n; ++i)
            hits += draw_link_state(d, 28e9, kInH, rng).los ? 1 : 0;
        const double se = std::sqrt(p * (1.0 - p) / n);
        EXPECT_LE(std::abs(static_cast<double>(hits) / n - p), 2.0 * se) << "d = " << d;
    }
}

TEST(Propagation, ClusterDrawsAreDeterministic)
{
    RngStream a = spawn_rng(42, 3, LinkTag::TxRis), b = spawn_rng(42, 3, LinkTag::TxRis);
    const ClusterSet x = draw_clusters({0, 25, 2}, Frame{}, {40, 50, 2}, kInH, 28e9, a);
    const ClusterSet y = draw_clusters({0, 25, 2}, Frame{}, {40, 50, 2}, kInH, 28e9, b);
    ASSERT_EQ(x.clusters.size(), y.clusters.size());
    for (std::size_t c = 0; c < x.clusters.size(); ++c) {
        ASSERT_EQ(x.clusters[c].scatterers.size(), y.clusters[c].scatterers.size());
        for (std::size_t s = 0; s < x.clusters[c].scatterers.size(); ++s) {
            EXPECT_EQ(x.clusters[c].scatterers[s].position, y.clusters[c].scatterers[s].position);
            EXPECT_EQ(x.clusters[c].scatterers[s].gain, y.clusters[c].scatterers[s].gain);
            EXPECT_EQ(x.clusters[c].scatterers[s].attenuation, y.clusters[c].scatterers[s].attenuation);
        }
    }
}

TEST(Propagation, ClusterGeometryStaysWithinBounds)
{
    RngStream rng(17);
    const Point3 from{0, 25, 2}, to{40, 50, 2};
    const double d_link = distance(from, to);
    for (int i = 0; i < 2000; ++i) {
        const ClusterSet set = draw_clusters(from, Frame{}, to, kInH, 28e9, rng);
        ASSERT_GE(set.clusters.size(), 1u);
        for (const auto& c : set.clusters) {
            ASSERT_GE(static_cast<int>(c.scatterers.size()), kInH.scatterers_min);
            ASSERT_LE(static_cast<int>(c.scatterers.size()), kInH.scatterers_max);
            ASSERT_GE(c.center.z, 0.0);
            const double r = distance(from, c.center);
            ASSERT_LE(r, d_link + 1e-9);
            // departure azimuth within +-90 deg of the Tx broadside (+x)
            ASSERT_GE(c.center.x - from.x, -1e-9);
            for (const auto& s : c.scatterers) {
                ASSERT_NEAR(distance(from, s.position), r, 1e-9);
                ASSERT_GT(s.attenuation, 0.0);
                ASSERT_LE(s.attenuation, 1.0);
            }
        }
    }
}

TEST(Propagation, ClampedPoissonClusterMean)
{
    const double expected = oracle::clamped_poisson_mean(1.8);
    EXPECT_NEAR(expected, 1.8 + std::exp(-1.8), 1e-12);
    RngStream rng = spawn_rng(42, 0, LinkTag::Calibration, 1);
    const int n = 100000;
    double total = 0.0;
    for (int i = 0; i < n; ++i)
        total += static_cast<double>(place_clusters({0, 0, 1}, Frame{}, {30, 0, 1}, kInH, rng).clusters.size());
    EXPECT_NEAR(total / n, expected, 0.01 * expected);
}

TEST(Propagation, ScattererAttenuationUsesUnfoldedNlosLength)
{
    Environment env = without_shadowing(kInH);
    RngStream rng(4);
    ClusterSet set = place_clusters({0, 0, 1}, Frame{}, {30, 0, 1}, env, rng);
    draw_path_gains(set, {0, 0, 1}, {30, 0, 1}, 28e9, env, rng);
    for (const auto& c : set.clusters)
        for (const auto& s : c.scatterers) {
            const double len = distance({0, 0, 1}, s.position) + distance(s.position, {30, 0, 1});
            const double pl = 17.3 + 38.3 * std::log10(std::max(len, 1.0)) + 24.9 * std::log10(28.0);
            EXPECT_NEAR(s.attenuation, std::pow(10.0, -pl / 10.0), 1e-12 * std::pow(10.0, -pl / 10.0));
        }
}
