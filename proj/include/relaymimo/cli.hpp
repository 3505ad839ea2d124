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

#ifndef RELAYMIMO_CLI_HPP
#define RELAYMIMO_CLI_HPP

#include "analytic.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "figures.hpp"
#include "monte_carlo.hpp"
#include "power_allocation.hpp"
#include "stats.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace relaymimo
{

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

namespace cli
{

struct CommonOptions
{
    std::string config;
    std::optional<std::size_t> trials;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
    std::string out;
};

inline void add_common(CLI::App *cmd, CommonOptions &o, bool with_config)
{
    if (with_config)
        cmd->add_option("--config", o.config, "scenario file (key = value, optional [system]/[run] sections)");
    cmd->add_option("--trials", o.trials, "Monte-Carlo trials (or samples)");
    cmd->add_option("--seed", o.seed, "64-bit seed");
    cmd->add_option("--workers", o.workers, "worker threads, 0 = all cores; output does not depend on it");
    cmd->add_option("--out", o.out, "output path (default: stdout)");
}

inline ConfigFile require_config(const CommonOptions &o)
{
    if (o.config.empty())
        throw ConfigError("--config is required");
    return load_config(o.config);
}

inline RunOptions resolve_run(const CommonOptions &o, RunOptions run)
{
    if (o.trials)
        run.trials = *o.trials;
    if (o.seed)
        run.seed = *o.seed;
    if (o.workers)
        run.workers = *o.workers;
    return run;
}

// Writes to --out when given, otherwise to the provided stream.
inline void emit(const std::string &path, std::ostream &fallback, const std::string &text)
{
    if (path.empty())
    {
        fallback << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw ConfigError("cannot write output file: " + path);
    f << text;
}

inline void echo(std::ostream &os, const SystemConfig &cfg)
{
    for (const auto &line : describe(cfg))
        os << "# " << line << '\n';
}

inline std::string run_simulate(const CommonOptions &o, const std::string &receiver)
{
    const auto file = require_config(o);
    const auto run = resolve_run(o, file.run);
    Receiver rx;
    if (receiver == "hybrid")
        rx = Receiver::hybrid;
    else if (receiver == "full_rf")
        rx = Receiver::full_rf;
    else
        throw ConfigError("--receiver must be hybrid or full_rf");
    const auto rep = monte_carlo_ergodic_rates(file.system, run.trials, run.seed, run.workers, rx);

    std::ostringstream os;
    echo(os, rep.cfg_echo);
    os << "# receiver = " << receiver << '\n';
    os << "# trials = " << rep.trials << '\n';
    os << "# seed = " << rep.seed << '\n';
    os << "# resampled_singular = " << rep.resampled_singular << '\n';
    if (rep.singular_warning())
        os << "# warning: singular-draw rate above 1e-3\n";
    os << "k,mc_rate,mc_se,rate_bound\n";
    for (std::size_t k = 0; k < rep.per_user_rate.size(); ++k)
    {
        const auto &cfg = rep.cfg_echo;
        const double bound = cfg.quant_bits ? analytic::rate_bound_quantized(cfg, k, *cfg.quant_bits) : analytic::rate_bound(cfg, k);
        os << k + 1 << ',' << format_number(rep.per_user_rate[k]) << ',' << format_number(rep.per_user_se[k]) << ','
           << format_number(bound) << '\n';
    }
    os << "sum," << format_number(rep.sum_rate) << ',' << format_number(rep.sum_rate_se) << ','
       << format_number(analytic::sum_rate_bound(rep.cfg_echo)) << '\n';
    return os.str();
}

inline std::string run_bound(const CommonOptions &o)
{
    const auto file = require_config(o);
    const auto &cfg = file.system;
    std::ostringstream os;
    echo(os, cfg);
    os << "k,xi_k,chi_r,chi_d,rate_bound\n";
    for (std::size_t k = 0; k < cfg.num_users; ++k)
    {
        const auto s = analytic::equivalent_snrs(cfg, k);
        const double r = cfg.quant_bits ? analytic::rate_bound_quantized(cfg, k, *cfg.quant_bits) : analytic::rate_bound(cfg, k);
        os << k + 1 << ',' << format_number(cfg.xi[k]) << ',' << format_number(s.chi_r) << ',' << format_number(s.chi_d)
           << ',' << format_number(r) << '\n';
    }
    os << "sum,,,," << format_number(analytic::sum_rate_bound(cfg)) << '\n';
    return os.str();
}

// Reference scenario of the noise-statistic checks.
inline SystemConfig stats_reference(std::size_t n)
{
    SystemConfig cfg = SystemConfig::symmetric(2, n, n, 1.0, 1.0);
    return cfg;
}

inline std::vector<StatisticReport> run_check(const std::string &check, const CommonOptions &o,
                                              const std::optional<SystemConfig> &user_cfg, std::uint64_t seed,
                                              unsigned workers)
{
    auto trials_or = [&](std::size_t d) { return o.trials.value_or(d); };
    std::vector<StatisticReport> out;
    if (check == "theorem1")
    {
        const double eta = user_cfg ? user_cfg->eta : 1.0;
        const std::size_t nr = user_cfg ? user_cfg->relay_antennas : 16;
        const std::size_t n = trials_or(100000);
        out.push_back(theorem1_moment(eta, nr, false, n, seed, workers));
        out.push_back(theorem1_moment(eta, nr, true, n, seed, workers));
        out.push_back(theorem1_moment(eta, nr, false, n, seed, workers, 3u));
    }
    else if (check == "prop1")
    {
        SystemConfig cfg = user_cfg.value_or(stats_reference(64));
        const std::size_t n = trials_or(10000);
        cfg.quant_bits.reset();
        out.push_back(prop1_diag(cfg, n, seed, workers));
        cfg.quant_bits = user_cfg && user_cfg->quant_bits ? *user_cfg->quant_bits : 3u;
        out.push_back(prop1_diag(cfg, n, seed, workers));
    }
    else if (check == "prop2")
    {
        SystemConfig base = user_cfg.value_or(SystemConfig::symmetric(8, 64, 64, 1.0, 1.0));
        const auto fit = prop2_decay(base, {64, 128, 256, 512, 1024, 2048, 4096}, trials_or(20), seed, workers);
        for (const auto &p : fit.points)
        {
            out.push_back(p.diag);
            out.push_back(p.offdiag);
        }
        out.push_back(fit.slope);
    }
    else if (check == "lemma2")
    {
        const SystemConfig cfg = user_cfg.value_or(stats_reference(512));
        for (auto &r : lemma2_wd_limit(cfg, trials_or(200), seed, workers))
            out.push_back(std::move(r));
    }
    else if (check == "lemma34")
    {
        const SystemConfig cfg = user_cfg.value_or(stats_reference(512));
        for (auto &r : lemma34_limits(cfg, trials_or(200), seed, workers))
            out.push_back(std::move(r));
    }
    else if (check == "phase")
    {
        const SystemConfig cfg = user_cfg.value_or(SystemConfig::symmetric(1, 1000, 16, 1.0, 1.0));
        out.push_back(phase_uniformity(cfg, trials_or(100000), seed, workers));
    }
    else
        throw ConfigError("unknown check '" + check + "'");
    return out;
}

inline const std::vector<std::string> &check_names()
{
    static const std::vector<std::string> names = {"theorem1", "prop1", "prop2", "lemma2", "lemma34", "phase"};
    return names;
}

inline std::string run_stats(const CommonOptions &o, const std::string &check, bool &all_pass)
{
    std::optional<SystemConfig> user_cfg;
    std::uint64_t seed = 1;
    unsigned workers = 0;
    if (!o.config.empty())
    {
        const auto file = load_config(o.config);
        user_cfg = file.system;
        seed = file.run.seed;
        workers = file.run.workers;
    }
    if (o.seed)
        seed = *o.seed;
    if (o.workers)
        workers = *o.workers;

    std::vector<StatisticReport> reports;
    const std::vector<std::string> checks = check == "all" ? check_names() : std::vector<std::string>{check};
    for (const auto &c : checks)
        for (auto &r : run_check(c, o, user_cfg, seed, workers))
            reports.push_back(std::move(r));

    all_pass = true;
    for (const auto &r : reports)
        all_pass = all_pass && r.passes();
    std::ostringstream os;
    write_stats_csv(os, reports);
    return os.str();
}

inline std::string run_pa(const CommonOptions &o, bool compare)
{
    const auto file = require_config(o);
    if (!file.p_t)
        throw ConfigError("power allocation needs p_t (or p_t_db) in the config");
    const auto &cfg = file.system;
    const auto c = pa::pa_constants(cfg, *file.p_t);
    const auto opt = pa::solve_optimal_pa(c);
    const auto wf = pa::waterfilling_pa(c);
    const auto eq = pa::equal_pa(cfg.num_users);

    std::ostringstream os;
    echo(os, cfg);
    os << "# p_t = " << format_number(*file.p_t) << '\n';
    os << "# status = " << pa::to_string(opt.status) << '\n';
    os << "# rho = " << format_number(opt.rho) << '\n';
    os << "# water-filling baseline: mu_k = max(lambda - n / l_k, 0)\n";
    os << "k,xi_k,mu_optimal,mu_waterfilling,mu_equal\n";
    for (std::size_t k = 0; k < cfg.num_users; ++k)
        os << k + 1 << ',' << format_number(cfg.xi[k]) << ',' << format_number(opt.mu[k]) << ',' << format_number(wf[k])
           << ',' << format_number(eq[k]) << '\n';
    os << "sum_rate,," << format_number(opt.sum_rate) << ',' << format_number(pa::sum_rate(wf, c)) << ','
       << format_number(pa::sum_rate(eq, c)) << '\n';
    if (compare)
    {
        const auto run = resolve_run(o, file.run);
        os << "mc_sum_rate,";
        for (const auto *mu : {&opt.mu, &wf, &eq})
        {
            SystemConfig sim = cfg;
            for (std::size_t k = 0; k < sim.num_users; ++k)
                sim.p_u[k] = (*mu)[k] * *file.p_t;
            os << ',' << format_number(monte_carlo_ergodic_rates(sim, run.trials, run.seed, run.workers).sum_rate);
        }
        os << '\n';
    }
    os << "kkt_residual,," << format_number(opt.kkt_residual) << ",,\n";
    return os.str();
}

inline void run_figure_cmd(const CommonOptions &o, const std::string &id)
{
    auto spec = figure_spec(id);
    const std::size_t trials = o.trials.value_or(1000);
    const std::uint64_t seed = o.seed.value_or(1);
    const unsigned workers = o.workers.value_or(0);
    const auto table = run_figure(spec, trials, seed, workers);

    const std::filesystem::path dir = o.out.empty() ? std::filesystem::path(".") : std::filesystem::path(o.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw ConfigError("cannot create output directory: " + dir.string());
    const auto path = dir / (id + ".csv");
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw ConfigError("cannot write output file: " + path.string());
    write_figure_csv(f, table);
}

} // namespace cli

// Exit codes: 0 success, 1 a statistical check failed, 2 usage or configuration error,
// 3 numerical failure (non-convergence, excessive singular draws).
inline int cli_main(int argc, const char *const *argv, std::ostream &out = std::cout, std::ostream &err = std::cerr)
{
    CLI::App app{"relaymimo: hybrid-detection massive MIMO relay uplink toolkit"};
    app.require_subcommand(1);

    cli::CommonOptions o;

    auto *sim = app.add_subcommand("simulate", "Monte-Carlo ergodic rates for a scenario file");
    cli::add_common(sim, o, true);
    std::string receiver = "hybrid";
    sim->add_option("--receiver", receiver, "hybrid or full_rf")->check(CLI::IsMember({"hybrid", "full_rf"}));

    auto *bound = app.add_subcommand("bound", "closed-form per-user rate bounds for a scenario file");
    cli::add_common(bound, o, true);

    auto *stats = app.add_subcommand("stats", "random-matrix statistics against their closed forms");
    cli::add_common(stats, o, true);
    std::string check = "all";
    std::vector<std::string> allowed = cli::check_names();
    allowed.push_back("all");
    stats->add_option("--check", check, "theorem1|prop1|prop2|lemma2|lemma34|phase|all")->check(CLI::IsMember(allowed));

    auto *pa_cmd = app.add_subcommand("pa", "sum-rate power allocation");
    pa_cmd->require_subcommand(1);
    auto *pa_solve = pa_cmd->add_subcommand("solve", "optimal allocation next to the baselines");
    auto *pa_compare = pa_cmd->add_subcommand("compare", "as solve, plus simulated sum rates of each allocation");
    cli::add_common(pa_solve, o, true);
    cli::add_common(pa_compare, o, true);

    auto *fig = app.add_subcommand("figure", "reproduce a figure dataset as <out>/<id>.csv");
    cli::add_common(fig, o, false);
    std::string fig_id;
    fig->add_option("id", fig_id, "fig2|fig3|fig4|fig5|fig6|fig8|fig9")->required()->check(CLI::IsMember(figure_ids()));

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &)
    {
        out << app.help();
        return kExitOk;
    }
    catch (const CLI::CallForAllHelp &)
    {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    }
    catch (const CLI::ParseError &e)
    {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    try
    {
        if (*sim)
            cli::emit(o.out, out, cli::run_simulate(o, receiver));
        else if (*bound)
            cli::emit(o.out, out, cli::run_bound(o));
        else if (*stats)
        {
            bool pass = true;
            cli::emit(o.out, out, cli::run_stats(o, check, pass));
            if (!pass)
            {
                err << "error: at least one statistic is outside its tolerance\n";
                return kExitCheckFailed;
            }
        }
        else if (*pa_solve || *pa_compare)
            cli::emit(o.out, out, cli::run_pa(o, bool(*pa_compare)));
        else if (*fig)
            cli::run_figure_cmd(o, fig_id);
    }
    catch (const ConfigError &e)
    {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    catch (const NumericalError &e)
    {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}

} // namespace relaymimo

#endif
