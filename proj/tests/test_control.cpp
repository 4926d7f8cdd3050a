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

#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rischan/control.hpp"
#include "rischan/harness.hpp"
#include "rischan/presets.hpp"

using namespace rischan;
using cd = std::complex<double>;

namespace {

double siso_gain(const CVector& h, const CVector& g, cd d, const PhaseVector& p)
{
    cd acc = d;
    for (Eigen::Index n = 0; n < h.size(); ++n)
        acc += g[n] * std::polar(1.0, p[n]) * h[n];
    return std::abs(acc);
}

} // namespace

TEST(Control, RealPositiveChannelsNeedNoShift)
{
    const CVector h = CVector::Constant(5, 0.3), g = CVector::Constant(5, 2.0);
    const PhaseVector p = siso_optimal_phases(h, g);
    for (Eigen::Index i = 0; i < p.size(); ++i)
        EXPECT_EQ(p[i], 0.0);
}

TEST(Control, SisoExampleAndGridOracle)
{
    CVector h(2), g(2);
    h << 1.0, cd(0.0, 1.0);
    g << 1.0, 1.0;
    const PhaseVector p = siso_optimal_phases(h, g);
    EXPECT_NEAR(p[0], 0.0, 1e-15);
    EXPECT_NEAR(p[1], 1.5 * kPi, 1e-15);
    EXPECT_NEAR(siso_gain(h, g, 0.0, p), 2.0, 1e-15);
    EXPECT_NEAR(oracle::brute_force_siso({1.0, cd(0, 1)}, {1.0, 1.0}, 0.0, 16), 2.0, 1e-15);
}

TEST(Control, SisoGainIgnoresCommonRotationOfH)
{
    std::mt19937_64 gen(8);
    const CVector h = oracle::random_matrix(gen, 9, 1), g = oracle::random_matrix(gen, 9, 1);
    const double base = siso_gain(h, g, 0.0, siso_optimal_phases(h, g));
    for (double rot : {0.4, 1.7, -2.9}) {
        const CVector hr = h * std::polar(1.0, rot);
        EXPECT_NEAR(siso_gain(hr, g, 0.0, siso_optimal_phases(hr, g)), base, 1e-12 * base);
    }
}

TEST(Control, SisoAlignmentIsNeverBeatenByTheSixteenLevelGrid)
{
    std::mt19937_64 gen(21);
    for (int t = 0; t < 300; ++t) {
        const int n = 1 + t % 5;
        const CVector h = oracle::random_matrix(gen, n, 1), g = oracle::random_matrix(gen, n, 1);
        const cd d = t % 2 ? oracle::random_matrix(gen, 1, 1)(0, 0) : cd(0.0);
        const double analytic = siso_gain(h, g, d, siso_optimal_phases(h, g, d));
        const double grid = oracle::brute_force_siso(std::vector<cd>(h.data(), h.data() + n),
                                                     std::vector<cd>(g.data(), g.data() + n), d, 16);
        EXPECT_LE(grid, analytic * (1.0 + 1e-12));
        // with a direct term the alignment bound is |d| + sum |g||h|
        EXPECT_NEAR(analytic, std::abs(d) + (h.cwiseAbs().array() * g.cwiseAbs().array()).sum(), 1e-12);
    }
}

TEST(Control, Quantization)
{
    const PhaseVector p(Eigen::Vector4d(0.1, 1.6, 3.2, 6.2));
    const PhaseVector q = quantize_phases(p, 2);
    EXPECT_NEAR(q[0], 0.0, 1e-15);
    EXPECT_NEAR(q[1], kPi / 2.0, 1e-15);
    EXPECT_NEAR(q[2], kPi, 1e-15);
    EXPECT_NEAR(q[3], 0.0, 1e-15);
    const PhaseVector same = quantize_phases(p, 0);
    EXPECT_EQ(same.values(), p.values());
}

TEST(Control, Baselines)
{
    RngStream rng(1);
    EXPECT_EQ(baseline_phases(PhaseAlgorithm::ZeroBaseline, 4, rng).values(), Eigen::VectorXd::Zero(4));
    RngStream a(5), b(5);
    EXPECT_EQ(baseline_phases(PhaseAlgorithm::RandomBaseline, 32, a).values(),
              baseline_phases(PhaseAlgorithm::RandomBaseline, 32, b).values());
    RngStream big(6);
    const PhaseVector many = baseline_phases(PhaseAlgorithm::RandomBaseline, 100000, big);
    EXPECT_NEAR(many.values().mean(), kPi, 0.01 * kPi);
    EXPECT_THROW(baseline_phases(PhaseAlgorithm::ZeroBaseline, 0, rng), Error);
}

TEST(Control, PinvDelegatesToSisoAlignment)
{
    std::mt19937_64 gen(12);
    RngStream rng(1);
    for (int t = 0; t < 100; ++t) {
        const CMatrix H = oracle::random_matrix(gen, 16, 1), G = oracle::random_matrix(gen, 1, 16),
                      D = oracle::random_matrix(gen, 1, 1);
        ChannelTriple tr;
        tr.H = H;
        tr.G = G;
        tr.D = D;
        const double a = achievable_rate(composite_channel(tr, pinv_phases(H, G, D, rng)), 1.0, 1.0);
        const double b = achievable_rate(composite_channel(tr, siso_optimal_phases(H, G, D)), 1.0, 1.0);
        EXPECT_NEAR(a, b, 1e-9);
    }
}

TEST(Control, PinvOutputsAreValidPhases)
{
    std::mt19937_64 gen(13);
    RngStream rng(1);
    for (int t = 0; t < 1000; ++t) {
        const int nt = 1 + t % 4, nr = 1 + (t / 4) % 4, n = 4 + t % 29;
        const CMatrix H = oracle::random_matrix(gen, n, nt), G = oracle::random_matrix(gen, nr, n),
                      D = oracle::random_matrix(gen, nr, nt);
        for (PinvTarget target : {PinvTarget::SingularAligned, PinvTarget::Identity}) {
            const PhaseVector p = pinv_phases(H, G, D, rng, target);
            ASSERT_EQ(p.size(), n);
            const CVector phi = p.phasors();
            for (Eigen::Index i = 0; i < n; ++i) {
                ASSERT_GE(p[i], 0.0);
                ASSERT_LT(p[i], 2.0 * kPi);
                ASSERT_NEAR(std::abs(phi[i]), 1.0, 1e-15);
            }
        }
    }
}

TEST(Control, PinvReachesTheRankOneBound)
{
    // rank-1 H and G: the best achievable gain is sigma_G * sigma_H with aligned modes
    std::mt19937_64 gen(14);
    RngStream rng(1);
    for (int t = 0; t < 50; ++t) {
        const CVector u = oracle::random_matrix(gen, 32, 1), v = oracle::random_matrix(gen, 4, 1);
        const CVector w = oracle::random_matrix(gen, 32, 1), x = oracle::random_matrix(gen, 4, 1);
        CVector unit_u = u, unit_w = w;
        for (Eigen::Index i = 0; i < 32; ++i) {
            unit_u[i] /= std::abs(u[i]);
            unit_w[i] /= std::abs(w[i]);
        }
        const CMatrix H = unit_u * v.transpose(), G = x * unit_w.transpose();
        const CMatrix D = CMatrix::Zero(4, 4);
        ChannelTriple tr;
        tr.H = H;
        tr.G = G;
        tr.D = D;
        const CMatrix c = composite_channel(tr, pinv_phases(H, G, D, rng));
        const double s1 = Eigen::JacobiSVD<CMatrix>(c).singularValues()[0];
        EXPECT_NEAR(s1, 32.0 * v.norm() * x.norm(), 1e-9 * s1);
    }
}

TEST(Control, PinvFallsBackOnZeroChannels)
{
    std::vector<std::string> seen;
    auto previous = set_warning_sink([&](const std::string& m) { seen.push_back(m); });
    RngStream a(3), b(3);
    const PhaseVector p = pinv_phases(CMatrix::Zero(8, 2), CMatrix::Zero(2, 8), CMatrix::Zero(2, 2), a);
    EXPECT_EQ(p.values(), baseline_phases(PhaseAlgorithm::RandomBaseline, 8, b).values());
    ASSERT_EQ(seen.size(), 1u);
    EXPECT_NE(seen[0].find("SingularPinv"), std::string::npos);
    set_warning_sink(previous);
}

TEST(Control, PinvRejectsInconsistentShapes)
{
    RngStream rng(1);
    EXPECT_THROW(pinv_phases(CMatrix::Zero(8, 2), CMatrix::Zero(2, 7), CMatrix::Zero(2, 2), rng), Error);
}

TEST(Control, PseudoInverseProperties)
{
    std::mt19937_64 gen(15);
    for (int t = 0; t < 50; ++t) {
        const CMatrix a = oracle::random_matrix(gen, 3 + t % 5, 2 + t % 7);
        const CMatrix p = pseudo_inverse(a).pinv;
        EXPECT_TRUE((a * p * a).isApprox(a, 1e-10));
        EXPECT_TRUE((p * a * p).isApprox(p, 1e-10));
        EXPECT_TRUE((a * p).adjoint().isApprox(a * p, 1e-10));
    }
}

TEST(Control, PinvBeatsRandomOnTheIndoorScene)
{
    SimConfig c = presets::indoor().sim;
    c.realizations = 200;
    const Scene scene(validate_config(c));
    double pinv = 0.0, random = 0.0;
    for (std::uint64_t r = 0; r < 200; ++r) {
        pinv += achievable_rate(evaluate_realization(scene, r, {PhaseAlgorithm::PinvAlign}), 10.0, 1e-13);
        random += achievable_rate(evaluate_realization(scene, r, {PhaseAlgorithm::RandomBaseline}), 10.0, 1e-13);
    }
    EXPECT_GT(pinv, random);
    RecordProperty("mean_rate_margin", std::to_string((pinv - random) / 200.0));
}

TEST(Control, SelectRis)
{
    const std::vector<RisSpec> two{RisSpec::make(64, {40, 50, 2}), RisSpec::make(64, {60, 30, 2})};
    EXPECT_EQ(select_ris({45, 45, 1}, two), 0u);
    EXPECT_EQ(select_ris({59, 31, 1}, two), 1u);
    EXPECT_EQ(select_ris({0, 0, 0}, std::span(two).first(1)), 0u);
    const std::vector<RisSpec> tie{RisSpec::make(4, {-1, 0, 0}), RisSpec::make(4, {1, 0, 0})};
    EXPECT_EQ(select_ris({0, 0, 0}, tie), 0u);
    EXPECT_THROW(select_ris({0, 0, 0}, std::span<const RisSpec>{}), Error);
}

TEST(Control, AchievableRateExamples)
{
    EXPECT_EQ(achievable_rate(CMatrix::Zero(3, 2), 1.0, 1.0), 0.0);
    EXPECT_NEAR(achievable_rate(CMatrix::Constant(1, 1, cd(0.6, 0.8)), 1.0, 1.0), 1.0, 1e-15);
    CMatrix c = CMatrix::Zero(2, 2);
    c(0, 0) = 2.0;
    c(1, 1) = cd(0.0, 1.0);
    EXPECT_NEAR(achievable_rate(c, 1.0, 1.0), std::log2(5.0) + 1.0, 1e-12);
    EXPECT_NEAR(achievable_rate(c, 1.0, 1.0), 3.3219, 5e-5);
    c(0, 1) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(achievable_rate(c, 1.0, 1.0), Error);
}

TEST(Control, RateMatchesLogDet)
{
    std::mt19937_64 gen(16);
    for (int t = 0; t < 200; ++t) {
        const CMatrix c = oracle::random_matrix(gen, 1 + t % 16, 1 + (t * 7) % 16);
        const double rho = std::pow(10.0, (t % 7) - 3.0);
        const double svd = achievable_rate(c, rho, 1.0);
        EXPECT_NEAR(svd, oracle::logdet_rate(c, rho), 1e-9 * std::max(1.0, svd));
    }
}

TEST(Control, FarFieldPower)
{
    const double lambda = 1.0714e-2, four_pi = 4.0 * std::acos(-1.0);
    const double direct = 1e4 * std::pow(lambda, 4) / (four_pi * four_pi * 1e2 * 1e2);
    EXPECT_NEAR(far_field_power(1.0, 100, lambda, 10, 10), direct, 1e-12 * direct);
    // the tabulated 8.35e-11 carries three figures; direct evaluation gives 8.344e-11
    EXPECT_NEAR(far_field_power(1.0, 100, lambda, 10, 10), 8.35e-11, 1e-3 * 8.35e-11);
    const double base = far_field_power(2.0, 64, 0.01, 20, 7);
    EXPECT_NEAR(far_field_power(2.0, 128, 0.01, 20, 7) / base, 4.0, 1e-12);
    EXPECT_NEAR(base / far_field_power(2.0, 64, 0.01, 20, 14), 4.0, 1e-12);
}
