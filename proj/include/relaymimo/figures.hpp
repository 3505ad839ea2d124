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

#ifndef RELAYMIMO_FIGURES_HPP
#define RELAYMIMO_FIGURES_HPP

#include "analytic.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "monte_carlo.hpp"
#include "power_allocation.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace relaymimo
{

struct FigureSpec
{
    std::string id;
    std::string sweep;        // swept parameter name, written in the first CSV column
    std::vector<double> grid; // sorted sweep values
    SystemConfig base;        // fixed caption parameters; swept fields are overwritten per point
    std::vector<std::string> notes; // assumptions beyond the caption, echoed as metadata
};

struct FigureTable
{
    std::vector<std::string> meta; // written as '# ' lines
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

inline const std::vector<std::string> &figure_ids()
{
    static const std::vector<std::string> ids = {"fig2", "fig3", "fig4", "fig5", "fig6", "fig8", "fig9"};
    return ids;
}

namespace detail
{

inline SystemConfig unit_scenario(std::size_t K, std::size_t n_d, std::size_t n_r)
{
    SystemConfig cfg;
    cfg.num_users = K;
    cfg.bs_antennas = n_d;
    cfg.relay_antennas = n_r;
    cfg.xi.assign(K, 1.0);
    cfg.p_u.assign(K, 1.0);
    return cfg;
}

// Path losses for the power-allocation figures: log-spaced over [0.1, 10].
inline std::vector<double> pa_path_losses(std::size_t K)
{
    std::vector<double> xi(K);
    for (std::size_t k = 0; k < K; ++k)
        xi[k] = K == 1 ? 1.0 : std::pow(10.0, 1.0 - 2.0 * double(k) / double(K - 1));
    return xi;
}

inline std::size_t relay_size(double n_d, double delta) { return std::size_t(std::llround(n_d / delta)); }

} // namespace detail

// Caption parameters for each reproducible figure, plus the assumptions filling gaps in the captions.
inline FigureSpec figure_spec(const std::string &id)
{
    FigureSpec s;
    s.id = id;
    if (id == "fig2")
    {
        s.sweep = "N_d";
        s.grid = {32, 64, 128, 256};
        s.base = detail::unit_scenario(5, 32, 32);
        s.base.p_u.assign(5, db_to_linear(20.0));
        s.base.p_r = db_to_linear(20.0);
        s.notes = {"assumption: K = 5 (caption leaves K unspecified)", "N_r = N_d (delta = 1)"};
    }
    else if (id == "fig3")
    {
        s.sweep = "P_u_dB";
        s.grid = {-10, -5, 0, 5, 10, 15, 20, 25, 30};
        s.base = detail::unit_scenario(5, 256, 256);
        s.base.p_r = db_to_linear(20.0);
        s.notes = {"assumption: K = 5 (caption leaves K unspecified)", "relay SNR swept through P_u with sigma2_r = 1"};
    }
    else if (id == "fig4")
    {
        s.sweep = "N_d";
        s.grid = {64, 128, 256, 512, 1024};
        s.base = detail::unit_scenario(5, 64, 6);
        s.base.p_r = db_to_linear(20.0);
        s.notes = {"assumption: K = 5 (caption leaves K unspecified)", "P_u = E_u / N_d with E_u = 20 dB",
                   "N_r = round(N_d / 10)"};
    }
    else if (id == "fig5")
    {
        s.sweep = "N_d";
        s.grid = {64, 128, 256, 512, 1024};
        s.base = detail::unit_scenario(5, 64, 64);
        s.base.p_u.assign(5, db_to_linear(10.0));
        s.notes = {"assumption: E_r = 20 dB (caption leaves E_r unspecified)", "P_r = E_r / N_d", "N_r = N_d"};
    }
    else if (id == "fig6")
    {
        s.sweep = "P_u_dB";
        s.grid = {-10, -5, 0, 5, 10, 15, 20, 25, 30};
        s.base = detail::unit_scenario(8, 128, 128);
        s.base.p_r = db_to_linear(20.0);
        s.notes = {"phase quantization only; channel estimation error is not modeled",
                   "variants: b = 1, 2, 3 bit phase shifters"};
    }
    else if (id == "fig8")
    {
        s.sweep = "P_T_dB";
        s.grid = {-10, -5, 0, 5, 10, 15, 20, 25, 30, 35, 40};
        s.base = detail::unit_scenario(5, 128, 128);
        s.base.xi = detail::pa_path_losses(5);
        s.notes = {"assumption: x-axis SNR is the total user power P_T in dB (sigma2 = 1)",
                   "assumption: xi log-spaced over [0.1, 10] (caption leaves path losses unspecified)",
                   "setups: {P_r = 10 dB, N_d = 128}, {P_r = 0 dB, N_d = 128}, {P_r = 10 dB, N_d = 32}; N_r = N_d",
                   "water-filling baseline: mu_k = max(lambda - n / l_k, 0)"};
    }
    else if (id == "fig9")
    {
        s.sweep = "N_d";
        s.grid = {16, 32, 64, 128, 256};
        s.base = detail::unit_scenario(5, 16, 16);
        s.base.p_r = db_to_linear(10.0);
        s.base.xi = detail::pa_path_losses(5);
        s.notes = {"assumption: xi log-spaced over [0.1, 10] (caption leaves path losses unspecified)",
                   "setups: P_T = 17, 19, 27 dB; N_r = N_d", "water-filling baseline: mu_k = max(lambda - n / l_k, 0)"};
    }
    else
        throw ConfigError("unknown figure id '" + id + "'");
    return s;
}

namespace detail
{

inline void add_mc(std::vector<std::string> &row, const MonteCarloReport &r)
{
    row.push_back(format_number(r.sum_rate));
    row.push_back(format_number(r.sum_rate_se));
}

inline double analytic_sum(const SystemConfig &cfg) { return analytic::sum_rate_bound(cfg); }

struct PaSetup
{
    std::string label;
    double p_r;
    std::size_t n_d;
    double p_t_db; // unused when P_T is the swept value
};

// One row of a power-allocation figure: the three strategies evaluated analytically and by simulation.
inline std::vector<std::string> pa_row(const std::string &sweep, double value, const std::string &label, SystemConfig cfg,
                                       double p_t, std::size_t trials, std::uint64_t seed, unsigned workers)
{
    const auto c = pa::pa_constants(cfg, p_t);
    const auto opt = pa::solve_optimal_pa(c);
    const std::vector<std::vector<double>> strategies = {opt.mu, pa::waterfilling_pa(c), pa::equal_pa(cfg.num_users)};

    std::vector<double> analytic, mc, se;
    for (const auto &mu : strategies)
    {
        SystemConfig run = cfg;
        for (std::size_t k = 0; k < run.num_users; ++k)
            run.p_u[k] = mu[k] * p_t;
        const auto rep = monte_carlo_ergodic_rates(run, trials, seed, workers);
        analytic.push_back(pa::sum_rate(mu, c));
        mc.push_back(rep.sum_rate);
        se.push_back(rep.sum_rate_se);
    }
    std::vector<std::string> row = {sweep, format_number(value), format_number(mc[0]), format_number(se[0]),
                                    format_number(analytic[0]), label};
    for (std::size_t s = 1; s < 3; ++s)
    {
        row.push_back(format_number(mc[s]));
        row.push_back(format_number(se[s]));
        row.push_back(format_number(analytic[s]));
    }
    row.push_back(format_number(opt.kkt_residual));
    return row;
}

} // namespace detail

inline FigureTable run_figure(const FigureSpec &spec, std::size_t trials, std::uint64_t seed, unsigned workers = 0)
{
    if (spec.grid.empty())
        throw ConfigError("figure grid is empty");
    for (std::size_t i = 1; i < spec.grid.size(); ++i)
        if (!(spec.grid[i - 1] < spec.grid[i]))
            throw ConfigError("figure grid must be strictly increasing");

    FigureTable t;
    t.meta.push_back("figure = " + spec.id);
    t.meta.push_back("sweep = " + spec.sweep);
    t.meta.push_back("trials = " + std::to_string(trials));
    t.meta.push_back("seed = " + std::to_string(seed));
    for (const auto &n : spec.notes)
        t.meta.push_back(n);
    for (const auto &line : describe(spec.base))
        t.meta.push_back("base " + line);
    t.columns = {"sweep", "value", "mc_sum_rate", "mc_se", "analytic_sum_rate"};

    const std::string &id = spec.id;
    const std::size_t K = spec.base.num_users;
    auto point_count = [](double v) { return std::size_t(std::llround(v)); };

    if (id == "fig2")
    {
        for (double v : spec.grid)
        {
            SystemConfig cfg = spec.base;
            cfg.bs_antennas = point_count(v);
            cfg.relay_antennas = detail::relay_size(v, spec.base.delta());
            std::vector<std::string> row = {spec.sweep, format_number(v)};
            detail::add_mc(row, monte_carlo_ergodic_rates(cfg, trials, seed, workers));
            row.push_back(format_number(detail::analytic_sum(cfg)));
            t.rows.push_back(std::move(row));
        }
    }
    else if (id == "fig3" || id == "fig4")
    {
        t.columns.insert(t.columns.end(), {"full_rf_sum_rate", "full_rf_se"});
        if (id == "fig4")
            t.columns.push_back("asymptote_sum_rate");
        const double e_u = db_to_linear(20.0);
        for (double v : spec.grid)
        {
            SystemConfig cfg = spec.base;
            if (id == "fig3")
                cfg.p_u.assign(K, db_to_linear(v));
            else
            {
                cfg.bs_antennas = point_count(v);
                cfg.relay_antennas = detail::relay_size(v, 10.0);
                cfg.p_u.assign(K, e_u / v);
            }
            std::vector<std::string> row = {spec.sweep, format_number(v)};
            detail::add_mc(row, monte_carlo_ergodic_rates(cfg, trials, seed, workers));
            row.push_back(format_number(detail::analytic_sum(cfg)));
            detail::add_mc(row, full_rf_baseline(cfg, trials, seed, workers));
            if (id == "fig4")
                row.push_back(format_number(double(K) * analytic::power_scaling_limit(analytic::ScalingScheme::user_only,
                                                                                       e_u / cfg.sigma2_r,
                                                                                       cfg.p_r / cfg.sigma2_d, 10.0, K)));
            t.rows.push_back(std::move(row));
        }
    }
    else if (id == "fig5")
    {
        t.columns.push_back("asymptote_sum_rate");
        const double e_r = db_to_linear(20.0);
        for (double v : spec.grid)
        {
            SystemConfig cfg = spec.base;
            cfg.bs_antennas = point_count(v);
            cfg.relay_antennas = detail::relay_size(v, spec.base.delta());
            cfg.p_r = e_r / v;
            std::vector<std::string> row = {spec.sweep, format_number(v)};
            detail::add_mc(row, monte_carlo_ergodic_rates(cfg, trials, seed, workers));
            row.push_back(format_number(detail::analytic_sum(cfg)));
            row.push_back(format_number(double(K) * analytic::power_scaling_limit(analytic::ScalingScheme::relay_only,
                                                                                   cfg.p_u[0] / cfg.sigma2_r,
                                                                                   e_r / cfg.sigma2_d, cfg.delta(), K)));
            t.rows.push_back(std::move(row));
        }
    }
    else if (id == "fig6")
    {
        for (unsigned b = 1; b <= 3; ++b)
        {
            const std::string tag = "b" + std::to_string(b);
            t.columns.insert(t.columns.end(), {"mc_" + tag, "mc_" + tag + "_se", "analytic_" + tag});
        }
        for (double v : spec.grid)
        {
            SystemConfig cfg = spec.base;
            cfg.p_u.assign(K, db_to_linear(v));
            std::vector<std::string> row = {spec.sweep, format_number(v)};
            detail::add_mc(row, monte_carlo_ergodic_rates(cfg, trials, seed, workers));
            row.push_back(format_number(detail::analytic_sum(cfg)));
            for (unsigned b = 1; b <= 3; ++b)
            {
                SystemConfig q = cfg;
                q.quant_bits = b;
                detail::add_mc(row, monte_carlo_ergodic_rates(q, trials, seed, workers));
                row.push_back(format_number(detail::analytic_sum(q)));
            }
            t.rows.push_back(std::move(row));
        }
    }
    else if (id == "fig8" || id == "fig9")
    {
        // mc/analytic columns hold the optimal allocation; baselines follow the setup label
        t.columns.insert(t.columns.end(), {"setup", "mc_waterfilling", "mc_waterfilling_se", "analytic_waterfilling",
                                           "mc_equal", "mc_equal_se", "analytic_equal", "kkt_residual"});
        std::vector<detail::PaSetup> setups;
        if (id == "fig8")
            setups = {{"Pr10dB_Nd128", 10.0, 128, 0.0}, {"Pr0dB_Nd128", 0.0, 128, 0.0}, {"Pr10dB_Nd32", 10.0, 32, 0.0}};
        else
            setups = {{"PT17dB", 10.0, 0, 17.0}, {"PT19dB", 10.0, 0, 19.0}, {"PT27dB", 10.0, 0, 27.0}};
        for (const auto &su : setups)
            for (double v : spec.grid)
            {
                SystemConfig cfg = spec.base;
                cfg.p_r = db_to_linear(su.p_r);
                const std::size_t nd = id == "fig8" ? su.n_d : point_count(v);
                cfg.bs_antennas = cfg.relay_antennas = nd;
                const double p_t = db_to_linear(id == "fig8" ? v : su.p_t_db);
                t.rows.push_back(detail::pa_row(spec.sweep, v, su.label, cfg, p_t, trials, seed, workers));
            }
    }
    else
        throw ConfigError("unknown figure id '" + id + "'");
    return t;
}

inline void write_figure_csv(std::ostream &os, const FigureTable &t)
{
    for (const auto &m : t.meta)
        os << "# " << m << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto &row : t.rows)
    {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << row[i];
        os << '\n';
    }
}

} // namespace relaymimo

#endif
