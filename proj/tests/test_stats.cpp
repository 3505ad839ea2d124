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

#include "relaymimo/stats.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace relaymimo;

namespace
{
constexpr double pi = std::numbers::pi;
}

TEST(Summarize, MeanAndStandardError)
{
    const auto r = summarize("x", std::vector<double>{1.0, 2.0, 3.0, 4.0}, 2.5);
    EXPECT_DOUBLE_EQ(r.estimate.real(), 2.5);
    EXPECT_NEAR(r.se_re, std::sqrt(5.0 / 3.0 / 4.0), 1e-15);
    EXPECT_EQ(r.se_im, 0.0);
    EXPECT_EQ(r.z(), 0.0);
    EXPECT_TRUE(r.passes());
    EXPECT_EQ(r.trials, 4u);
}

TEST(Summarize, ComplexComponentsSeparate)
{
    std::vector<std::complex<double>> xs{{1, 0}, {1, 2}, {1, -2}, {1, 4}};
    const auto r = summarize("c", xs, 1.0);
    EXPECT_EQ(r.z_re(), 0.0);
    EXPECT_GT(r.se_im, 0.0);
    EXPECT_NEAR(r.z_im(), 1.0 / r.se_im, 1e-12);
    EXPECT_EQ(r.std_error(), r.se_im);
}

TEST(Summarize, RejectsSingleSample)
{
    EXPECT_THROW(summarize("x", std::vector<double>{1.0}, 0.0), ConfigError);
}

TEST(PassRules, Bands)
{
    StatisticReport r;
    r.estimate = 1.04;
    r.target = 1.0;
    r.rule = PassRule::relative_band;
    r.tolerance = 0.05;
    EXPECT_TRUE(r.passes());
    r.tolerance = 0.03;
    EXPECT_FALSE(r.passes());
    r.rule = PassRule::upper_bound;
    EXPECT_FALSE(r.passes());
    r.target = 1.05;
    EXPECT_TRUE(r.passes());
    r.rule = PassRule::exact;
    r.tolerance = 1e-12;
    EXPECT_FALSE(r.passes());
}

TEST(CrossMoment, SameIndexTarget)
{
    const auto r = theorem1_moment(1.0, 8, true, 20000, 1);
    EXPECT_DOUBLE_EQ(r.target, 8.0);
    EXPECT_LE(r.z(), 3.0);
    EXPECT_EQ(r.estimate.imag(), 0.0);
}

TEST(CrossMoment, CrossIndexTarget)
{
    const auto r = theorem1_moment(1.0, 16, false, 100000, 2);
    EXPECT_NEAR(r.target, pi / 4.0, 1e-15);
    EXPECT_LE(r.z_re(), 3.0);
    EXPECT_LE(r.z_im(), 3.0);
}

TEST(CrossMoment, CrossIndexScalesWithEta)
{
    const auto r = theorem1_moment(2.5, 4, false, 50000, 3);
    EXPECT_NEAR(r.target, pi * 2.5 / 4.0, 1e-15);
    EXPECT_LE(r.z(), 3.0);
}

TEST(CrossMoment, QuantizedTarget)
{
    const auto r = theorem1_moment(1.0, 16, false, 100000, 4, 0, 3u);
    EXPECT_NEAR(r.target, 0.745847, 1e-6);
    EXPECT_EQ(r.name, "theorem1_cross_b3");
    EXPECT_LE(r.z(), 3.0);
}

TEST(CrossMoment, StandardErrorShrinksWithTrials)
{
    const double se1 = theorem1_moment(1.0, 8, false, 20000, 5).se_re;
    const double se2 = theorem1_moment(1.0, 8, false, 40000, 6).se_re;
    EXPECT_NEAR(se1 / se2, std::sqrt(2.0), 0.2 * std::sqrt(2.0));
}

TEST(AnalogNoiseDiagonal, Targets)
{
    EXPECT_NEAR(prop1_target(SystemConfig::symmetric(2, 4, 4, 1, 1)), 4.0 + 3.0 * pi / 4.0, 1e-12);
    EXPECT_DOUBLE_EQ(prop1_target(SystemConfig::symmetric(1, 1, 6, 1, 1)), 6.0);
    auto q = SystemConfig::symmetric(2, 64, 64, 1, 1);
    q.quant_bits = 3u;
    EXPECT_NEAR(prop1_target(q), 110.98833, 1e-5);
    q.quant_bits = 40u;
    EXPECT_NEAR(prop1_target(q), prop1_target(SystemConfig::symmetric(2, 64, 64, 1, 1)), 1e-9);
}

TEST(AnalogNoiseDiagonal, MonteCarloMatches)
{
    const auto r = prop1_diag(SystemConfig::symmetric(2, 16, 16, 1, 1), 4000, 7);
    EXPECT_LE(r.z(), 3.0) << r.estimate.real() << " vs " << r.target;
}

TEST(AnalogNoiseDiagonal, QuantizedMonteCarloMatches)
{
    auto cfg = SystemConfig::symmetric(2, 16, 16, 1, 1);
    cfg.quant_bits = 2u;
    const auto r = prop1_diag(cfg, 4000, 8);
    EXPECT_LE(r.z(), 3.0) << r.estimate.real() << " vs " << r.target;
}

TEST(AnalogGram, DiagonalExactlyOne)
{
    const auto rep = prop2_identity(SystemConfig::symmetric(4, 256, 16, 1, 1), 50, 9);
    EXPECT_TRUE(rep.diag.passes());
    EXPECT_LE(std::abs(rep.diag.estimate.real() - 1.0), 1e-12);
    EXPECT_TRUE(rep.offdiag.passes());
}

TEST(AnalogGram, OffDiagonalDecays)
{
    const auto a = prop2_identity(SystemConfig::symmetric(4, 256, 16, 1, 1), 100, 10);
    const auto b = prop2_identity(SystemConfig::symmetric(4, 1024, 64, 1, 1), 100, 10);
    EXPECT_LT(b.offdiag.estimate.real(), a.offdiag.estimate.real());
}

TEST(AnalogGram, DecaySlope)
{
    const auto fit = prop2_decay(SystemConfig::symmetric(4, 64, 64, 1, 1), {64, 128, 256, 512, 1024}, 40, 11);
    ASSERT_EQ(fit.points.size(), 5u);
    EXPECT_TRUE(fit.slope.passes()) << fit.slope.estimate.real();
}

TEST(AnalogGram, NeedsTwoUsers)
{
    EXPECT_THROW(prop2_identity(SystemConfig::symmetric(1, 16, 16, 1, 1), 10, 1), ConfigError);
}

TEST(DigitalStageLimit, Targets)
{
    auto cfg = SystemConfig::symmetric(2, 64, 64, 1, 1);
    cfg.xi = {1.0, 4.0};
    const auto reps = lemma2_wd_limit(cfg, 2, 1);
    ASSERT_EQ(reps.size(), 3u);
    EXPECT_NEAR(reps[0].target, 2.0 / std::sqrt(pi), 1e-12);
    EXPECT_NEAR(reps[1].target, 1.0 / std::sqrt(pi), 1e-12);
    EXPECT_EQ(reps[2].name, "lemma2_offdiag");
    EXPECT_EQ(reps[2].target, 0.0);

    cfg.quant_bits = 3u;
    EXPECT_NEAR(lemma2_wd_limit(cfg, 2, 1)[0].target, 1.1579113, 1e-7);
}

TEST(DigitalStageLimit, MonteCarloNearLimit)
{
    // finite-size bias decays like 1/N_d; at this size it is far below the sampling error
    const auto reps = lemma2_wd_limit(SystemConfig::symmetric(2, 256, 256, 1, 1), 100, 12);
    for (const auto &r : reps)
        EXPECT_LE(std::abs(r.estimate.real() - r.target), 0.02 * (r.target == 0 ? 1.0 : r.target)) << r.name;
}

TEST(NoiseLimits, Targets)
{
    EXPECT_NEAR(lemma3_target(SystemConfig::symmetric(2, 64, 64, 1, 1), 0), 2.2732395, 1e-7);
    EXPECT_NEAR(lemma4_target(SystemConfig::symmetric(2, 64, 64, 1, 1), 0), 3.8197186, 1e-7);
    auto q = SystemConfig::symmetric(2, 64, 64, 1, 1);
    q.quant_bits = 3u;
    EXPECT_NEAR(lemma4_target(q, 0), 3.8197186 / 0.9496412, 1e-6);
}

TEST(NoiseLimits, MonteCarloApproachesLimitFromAbove)
{
    // the finite-size excess shrinks as the arrays grow
    auto cfg = SystemConfig::symmetric(2, 64, 64, 10, 10);
    const auto small = lemma34_limits(cfg, 60, 13, 0, 0.25);
    cfg.bs_antennas = cfg.relay_antennas = 256;
    const auto large = lemma34_limits(cfg, 60, 13, 0, 0.10);
    ASSERT_EQ(small.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i)
    {
        const double e_small = small[i].estimate.real() / small[i].target - 1.0;
        const double e_large = large[i].estimate.real() / large[i].target - 1.0;
        EXPECT_LT(std::abs(e_large), std::abs(e_small)) << large[i].name;
        EXPECT_TRUE(large[i].passes()) << large[i].name << " " << large[i].estimate.real() << " vs " << large[i].target;
    }
}

TEST(QuantizedTargets, MonotoneInBits)
{
    auto cfg = SystemConfig::symmetric(2, 64, 32, 1, 1);
    const double ideal_p1 = prop1_target(cfg), ideal_l3 = lemma3_target(cfg, 0), ideal_l4 = lemma4_target(cfg, 0);
    double prev_p1 = 0, prev_l3 = INFINITY, prev_l4 = INFINITY;
    for (unsigned b = 1; b <= 8; ++b)
    {
        cfg.quant_bits = b;
        const double p1 = prop1_target(cfg), l3 = lemma3_target(cfg, 0), l4 = lemma4_target(cfg, 0);
        EXPECT_GT(p1, prev_p1);
        EXPECT_LT(l3, prev_l3);
        EXPECT_LT(l4, prev_l4);
        EXPECT_LT(p1, ideal_p1);
        EXPECT_GT(l3, ideal_l3);
        EXPECT_GT(l4, ideal_l4);
        prev_p1 = p1;
        prev_l3 = l3;
        prev_l4 = l4;
    }
    EXPECT_LE(std::abs(prev_l3 / ideal_l3 - 1.0), 1e-4);
}

TEST(PhaseUniformity, UniformPasses)
{
    const auto r = phase_uniformity(SystemConfig::symmetric(1, 1000, 16, 1, 1), 100000, 14);
    EXPECT_NEAR(r.tolerance, 0.00516, 1e-5);
    EXPECT_TRUE(r.passes()) << r.estimate.real();
}

TEST(PhaseUniformity, SingleRelayAntenna)
{
    const auto r = phase_uniformity(SystemConfig::symmetric(1, 1000, 1, 1, 1), 100000, 15);
    EXPECT_TRUE(r.passes()) << r.estimate.real();
}

TEST(PhaseUniformity, HalvedPhasesFail)
{
    auto ph = analog_phase_samples(SystemConfig::symmetric(1, 1000, 16, 1, 1), 100000, 16);
    for (auto &p : ph)
        p *= 0.5;
    EXPECT_GT(ks_uniform(ph), ks_critical_1pct(ph.size()));
}

TEST(PhaseUniformity, KsDistanceOfKnownSample)
{
    // evenly spaced midpoints are at distance 1/(2n)
    std::vector<double> ph;
    for (int i = 0; i < 10; ++i)
        ph.push_back(2.0 * pi * (i + 0.5) / 10.0);
    EXPECT_NEAR(ks_uniform(ph), 0.05, 1e-12);
    EXPECT_NEAR(wrap_two_pi(-0.5), 2.0 * pi - 0.5, 1e-15);
}

TEST(StatsCsv, Header)
{
    std::ostringstream os;
    write_stats_csv(os, {summarize("a", std::vector<double>{1.0, 3.0}, 2.0)});
    EXPECT_EQ(os.str(), "name,estimate_re,estimate_im,std_error,target,trials,z\na,2,0,1,2,2,0\n");
}
