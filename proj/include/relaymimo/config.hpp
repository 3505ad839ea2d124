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

#ifndef RELAYMIMO_CONFIG_HPP
#define RELAYMIMO_CONFIG_HPP

#include "errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace relaymimo
{

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

// All scenario parameters of the two-hop uplink. Every quantity is linear.
struct SystemConfig
{
    std::size_t num_users = 1;      // K (= number of RF chains at the BS)
    std::size_t bs_antennas = 1;    // N_d
    std::size_t relay_antennas = 1; // N_r
    double eta = 1.0;               // relay -> BS per-entry channel variance
    std::vector<double> xi{1.0};    // per-user path loss to the relay
    std::vector<double> p_u{1.0};   // per-user transmit power
    double p_r = 1.0;               // relay transmit power
    double sigma2_r = 1.0;          // relay noise variance
    double sigma2_d = 1.0;          // BS noise variance
    std::optional<unsigned> quant_bits; // phase-shifter resolution; empty = ideal phases

    double delta() const { return double(bs_antennas) / double(relay_antennas); }
    double xi_sum() const { return std::accumulate(xi.begin(), xi.end(), 0.0); }
    std::size_t K() const { return num_users; }

    bool equal_powers() const
    {
        return std::all_of(p_u.begin(), p_u.end(), [&](double p) { return p == p_u.front(); });
    }

    void validate() const
    {
        if (num_users == 0)
            throw ConfigError("K must be positive");
        if (bs_antennas == 0 || relay_antennas == 0)
            throw ConfigError("antenna counts must be positive");
        if (num_users > relay_antennas || num_users > bs_antennas)
            throw ConfigError("K must not exceed N_r or N_d");
        if (xi.size() != num_users)
            throw ConfigError("xi must have K entries");
        if (p_u.size() != num_users)
            throw ConfigError("p_u must have K entries");
        if (!(eta > 0.0) || !(sigma2_r > 0.0) || !(sigma2_d > 0.0))
            throw ConfigError("eta, sigma2_r and sigma2_d must be strictly positive");
        if (!(p_r >= 0.0))
            throw ConfigError("p_r must be nonnegative");
        for (double v : xi)
            if (!(v >= 0.0) || !std::isfinite(v))
                throw ConfigError("xi entries must be finite and nonnegative");
        for (double v : p_u)
            if (!(v >= 0.0) || !std::isfinite(v))
                throw ConfigError("p_u entries must be finite and nonnegative");
        if (quant_bits && *quant_bits == 0)
            throw ConfigError("quant_bits must be positive");
    }

    // Equal path loss xi = 1, eta = 1, unit noise variances.
    static SystemConfig symmetric(std::size_t K, std::size_t n_d, std::size_t n_r, double p_u, double p_r)
    {
        SystemConfig cfg;
        cfg.num_users = K;
        cfg.bs_antennas = n_d;
        cfg.relay_antennas = n_r;
        cfg.xi.assign(K, 1.0);
        cfg.p_u.assign(K, p_u);
        cfg.p_r = p_r;
        cfg.validate();
        return cfg;
    }
};

// Fixed-format numbers shared by every CSV and metadata line: 9 significant digits, '.' separator.
inline std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

inline std::string format_list(const std::vector<double> &v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + format_number(v[i]);
    return s;
}

// "key = value" lines describing a resolved configuration.
inline std::vector<std::string> describe(const SystemConfig &cfg)
{
    std::vector<std::string> out;
    out.push_back("K = " + std::to_string(cfg.num_users));
    out.push_back("N_d = " + std::to_string(cfg.bs_antennas));
    out.push_back("N_r = " + std::to_string(cfg.relay_antennas));
    out.push_back("delta = " + format_number(cfg.delta()));
    out.push_back("eta = " + format_number(cfg.eta));
    out.push_back("xi = " + format_list(cfg.xi));
    out.push_back("p_u = " + format_list(cfg.p_u));
    out.push_back("p_r = " + format_number(cfg.p_r));
    out.push_back("sigma2_r = " + format_number(cfg.sigma2_r));
    out.push_back("sigma2_d = " + format_number(cfg.sigma2_d));
    out.push_back("quant_bits = " + (cfg.quant_bits ? std::to_string(*cfg.quant_bits) : std::string("none")));
    return out;
}

struct RunOptions
{
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    unsigned workers = 0; // 0 = hardware concurrency
};

struct ConfigFile
{
    SystemConfig system;
    RunOptions run;
    std::optional<double> p_t; // total user power budget for power allocation
};

namespace detail
{

inline std::vector<double> parse_list(const std::string &key, const std::string &text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos)
            throw ConfigError("empty list element in '" + key + "'");
        const std::string tok = item.substr(b, e - b + 1);
        std::size_t used = 0;
        double v = 0.0;
        try
        {
            v = std::stod(tok, &used);
        }
        catch (const std::exception &)
        {
            throw ConfigError("'" + key + "' is not numeric: " + tok);
        }
        if (used != tok.size())
            throw ConfigError("'" + key + "' is not numeric: " + tok);
        out.push_back(v);
    }
    if (out.empty())
        throw ConfigError("'" + key + "' has no value");
    return out;
}

inline std::uint64_t parse_count(const std::string &key, const std::string &text)
{
    const auto v = parse_list(key, text);
    if (v.size() != 1 || v[0] < 0 || v[0] != std::floor(v[0]))
        throw ConfigError("'" + key + "' must be a nonnegative integer");
    return std::uint64_t(v[0]);
}

} // namespace detail

// Parses the plain-text "key = value" format. Sections ([system], [run]) only group keys.
// Power and noise fields accept a linear form (p_u) or a decibel form (p_u_db), never both.
inline ConfigFile parse_config(std::istream &in)
{
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try
    {
        pt::read_ini(in, tree);
    }
    catch (const pt::ini_parser_error &e)
    {
        throw ConfigError(std::string("config parse error: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
    }

    std::vector<std::pair<std::string, std::string>> entries;
    for (const auto &[name, node] : tree)
    {
        if (node.empty())
        {
            entries.emplace_back(name, node.data());
            continue;
        }
        if (name != "system" && name != "run")
            throw ConfigError("unknown config section [" + name + "]");
        for (const auto &[key, leaf] : node)
            entries.emplace_back(key, leaf.data());
    }

    auto find = [&](const std::string &key) -> std::optional<std::string> {
        std::optional<std::string> hit;
        for (const auto &[k, v] : entries)
            if (k == key)
            {
                if (hit)
                    throw ConfigError("duplicate key '" + key + "'");
                hit = v;
            }
        return hit;
    };

    static const std::vector<std::string> known = {
        "K", "N_d", "N_r", "delta", "eta", "eta_db", "xi", "xi_db", "p_u", "p_u_db", "p_r", "p_r_db",
        "sigma2_r", "sigma2_r_db", "sigma2_d", "sigma2_d_db", "quant_bits", "p_t", "p_t_db",
        "trials", "seed", "workers"};
    for (const auto &[k, v] : entries)
        if (std::find(known.begin(), known.end(), k) == known.end())
            throw ConfigError("unknown config key '" + k + "'");

    // Linear-or-dB field lookup.
    auto dual = [&](const std::string &key) -> std::optional<std::vector<double>> {
        const auto lin = find(key);
        const auto db = find(key + "_db");
        if (lin && db)
            throw ConfigError("'" + key + "' and '" + key + "_db' are mutually exclusive");
        if (lin)
            return detail::parse_list(key, *lin);
        if (db)
        {
            auto v = detail::parse_list(key + "_db", *db);
            for (auto &x : v)
                x = db_to_linear(x);
            return v;
        }
        return std::nullopt;
    };
    auto scalar = [&](const std::string &key) -> std::optional<double> {
        const auto v = dual(key);
        if (!v)
            return std::nullopt;
        if (v->size() != 1)
            throw ConfigError("'" + key + "' must be a scalar");
        return v->front();
    };

    ConfigFile out;
    SystemConfig &cfg = out.system;

    const auto k = find("K");
    const auto nd = find("N_d");
    if (!k || !nd)
        throw ConfigError("config requires K and N_d");
    cfg.num_users = detail::parse_count("K", *k);
    cfg.bs_antennas = detail::parse_count("N_d", *nd);

    const auto nr = find("N_r");
    const auto delta = find("delta");
    if (nr && delta)
        throw ConfigError("'N_r' and 'delta' are mutually exclusive");
    if (nr)
        cfg.relay_antennas = detail::parse_count("N_r", *nr);
    else if (delta)
    {
        const auto d = detail::parse_list("delta", *delta);
        if (d.size() != 1 || !(d[0] > 0))
            throw ConfigError("'delta' must be a positive scalar");
        cfg.relay_antennas = std::size_t(std::llround(double(cfg.bs_antennas) / d[0]));
    }
    else
        cfg.relay_antennas = cfg.bs_antennas;

    auto broadcast = [&](const std::string &key, std::vector<double> v) {
        if (v.size() == 1)
            v.assign(cfg.num_users, v[0]);
        if (v.size() != cfg.num_users)
            throw ConfigError("'" + key + "' must have 1 or K entries");
        return v;
    };

    cfg.eta = scalar("eta").value_or(1.0);
    cfg.xi = broadcast("xi", dual("xi").value_or(std::vector<double>{1.0}));
    cfg.p_u = broadcast("p_u", dual("p_u").value_or(std::vector<double>{1.0}));
    cfg.p_r = scalar("p_r").value_or(1.0);
    cfg.sigma2_r = scalar("sigma2_r").value_or(1.0);
    cfg.sigma2_d = scalar("sigma2_d").value_or(1.0);
    if (const auto qb = find("quant_bits"))
        cfg.quant_bits = unsigned(detail::parse_count("quant_bits", *qb));
    out.p_t = scalar("p_t");
    if (out.p_t && !(*out.p_t > 0))
        throw ConfigError("'p_t' must be positive");

    if (const auto t = find("trials"))
        out.run.trials = detail::parse_count("trials", *t);
    if (const auto s = find("seed"))
        out.run.seed = detail::parse_count("seed", *s);
    if (const auto w = find("workers"))
        out.run.workers = unsigned(detail::parse_count("workers", *w));

    cfg.validate();
    return out;
}

inline ConfigFile load_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path.string());
    return parse_config(in);
}

} // namespace relaymimo

#endif
