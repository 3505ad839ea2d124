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

#include "relaymimo/figures.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace relaymimo;

namespace
{

FigureSpec shrunk(const std::string &id, std::vector<double> grid)
{
    auto s = figure_spec(id);
    s.grid = std::move(grid);
    return s;
}

std::string csv(const FigureTable &t)
{
    std::ostringstream os;
    write_figure_csv(os, t);
    return os.str();
}

std::string header_line(const std::string &text)
{
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line))
        if (!line.empty() && line[0] != '#')
            return line;
    return {};
}

} // namespace

TEST(Figures, KnownIds)
{
    for (const auto &id : figure_ids())
    {
        const auto s = figure_spec(id);
        EXPECT_EQ(s.id, id);
        EXPECT_FALSE(s.grid.empty());
        EXPECT_NO_THROW(s.base.validate());
    }
    EXPECT_THROW(figure_spec("fig7"), ConfigError);
}

TEST(Figures, CaptionParameters)
{
    const auto f2 = figure_spec("fig2");
    EXPECT_EQ(f2.grid, (std::vector<double>{32, 64, 128, 256}));
    EXPECT_DOUBLE_EQ(f2.base.p_r, 100.0);
    const auto f6 = figure_spec("fig6");
    EXPECT_EQ(f6.base.num_users, 8u);
    EXPECT_EQ(f6.base.bs_antennas, 128u);
    const auto f9 = figure_spec("fig9");
    EXPECT_DOUBLE_EQ(f9.base.xi.front(), 10.0);
    EXPECT_DOUBLE_EQ(f9.base.xi.back(), 0.1);
}

TEST(Figures, Fig2Table)
{
    const auto t = run_figure(shrunk("fig2", {16, 32}), 4, 1);
    ASSERT_EQ(t.rows.size(), 2u);
    const auto text = csv(t);
    EXPECT_EQ(header_line(text), "sweep,value,mc_sum_rate,mc_se,analytic_sum_rate");
    EXPECT_NE(text.find("# figure = fig2\n"), std::string::npos);
    EXPECT_NE(text.find("# assumption: K = 5"), std::string::npos);
    EXPECT_EQ(t.rows[0][0], "N_d");
    EXPECT_EQ(t.rows[1][1], "32");
}

TEST(Figures, Fig3And4Columns)
{
    EXPECT_EQ(header_line(csv(run_figure(shrunk("fig3", {0}), 3, 1))),
              "sweep,value,mc_sum_rate,mc_se,analytic_sum_rate,full_rf_sum_rate,full_rf_se");
    const auto t4 = run_figure(shrunk("fig4", {64}), 3, 1);
    EXPECT_EQ(header_line(csv(t4)),
              "sweep,value,mc_sum_rate,mc_se,analytic_sum_rate,full_rf_sum_rate,full_rf_se,asymptote_sum_rate");
    // K times the a=1, b=0 limit at delta = 10, gamma = 100
    EXPECT_NEAR(std::stod(t4.rows[0].back()), 5.0 * 1.650835, 1e-5);
}

TEST(Figures, Fig5Asymptote)
{
    const auto t = run_figure(shrunk("fig5", {64}), 3, 1);
    EXPECT_EQ(header_line(csv(t)), "sweep,value,mc_sum_rate,mc_se,analytic_sum_rate,asymptote_sum_rate");
    EXPECT_NEAR(std::stod(t.rows[0].back()), 5.0 * analytic::power_scaling_limit(analytic::ScalingScheme::relay_only, 10, 100, 1, 5),
                1e-6);
}

TEST(Figures, Fig6Variants)
{
    const auto t = run_figure(shrunk("fig6", {10}), 3, 1);
    EXPECT_EQ(header_line(csv(t)), "sweep,value,mc_sum_rate,mc_se,analytic_sum_rate,mc_b1,mc_b1_se,analytic_b1,mc_b2,"
                                   "mc_b2_se,analytic_b2,mc_b3,mc_b3_se,analytic_b3");
    const auto &row = t.rows[0];
    // analytic columns increase with the bit count and stay below the ideal one
    EXPECT_LT(std::stod(row[7]), std::stod(row[10]));
    EXPECT_LT(std::stod(row[10]), std::stod(row[13]));
    EXPECT_LT(std::stod(row[13]), std::stod(row[4]));
}

TEST(Figures, PowerAllocationTable)
{
    const auto t = run_figure(shrunk("fig8", {20}), 3, 1);
    ASSERT_EQ(t.rows.size(), 3u);
    EXPECT_EQ(header_line(csv(t)), "sweep,value,mc_sum_rate,mc_se,analytic_sum_rate,setup,mc_waterfilling,"
                                   "mc_waterfilling_se,analytic_waterfilling,mc_equal,mc_equal_se,analytic_equal,kkt_residual");
    for (const auto &row : t.rows)
    {
        ASSERT_EQ(row.size(), 13u);
        EXPECT_GE(std::stod(row[4]), std::stod(row[8]) - 1e-9);
        EXPECT_GE(std::stod(row[4]), std::stod(row[11]) - 1e-9);
        EXPECT_LE(std::stod(row[12]), 1e-6);
    }
    EXPECT_EQ(t.rows[2][5], "Pr10dB_Nd32");
}

TEST(Figures, DeterministicAcrossWorkers)
{
    const auto spec = shrunk("fig2", {16, 32});
    EXPECT_EQ(csv(run_figure(spec, 6, 3, 1)), csv(run_figure(spec, 6, 3, 4)));
}

TEST(Figures, RejectsUnsortedGrid)
{
    EXPECT_THROW(run_figure(shrunk("fig2", {64, 32}), 3, 1), ConfigError);
    EXPECT_THROW(run_figure(shrunk("fig2", {}), 3, 1), ConfigError);
}
