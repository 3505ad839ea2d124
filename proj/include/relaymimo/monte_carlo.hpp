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

#ifndef RELAYMIMO_MONTE_CARLO_HPP
#define RELAYMIMO_MONTE_CARLO_HPP

#include "channel.hpp"
#include "detection.hpp"
#include "errors.hpp"
#include "parallel.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace relaymimo
{

// Singular draws allowed before a run is rejected, as a fraction of trials.
inline constexpr double kMaxSingularFraction = 1e-2;
// Above this fraction the report carries a warning.
inline constexpr double kWarnSingularFraction = 1e-3;

struct MonteCarloReport
{
    std::vector<double> per_user_rate; // mean of 1/2 log2(1 + gamma_k)
    std::vector<double> per_user_se;
    double sum_rate = 0.0;
    double sum_rate_se = 0.0; // standard error of the per-trial sum
    std::size_t trials = 0;
    std::size_t resampled_singular = 0;
    std::uint64_t seed = 0;
    SystemConfig cfg_echo;

    bool singular_warning() const { return double(resampled_singular) > kWarnSingularFraction * double(trials); }
};

enum class Receiver
{
    hybrid, // phase-aligned analog stage + K x K ZF
    full_rf // ZF over all N_d antennas
};

namespace detail
{

struct TrialRates
{
    std::vector<double> rates;
    std::size_t singular = 0;
};

// One trial: draw from substream (seed, t), resample on a singular equivalent channel.
inline TrialRates run_trial(const SystemConfig &cfg, Receiver rx, std::uint64_t seed, std::size_t t)
{
    RngStream rng(seed, t);
    TrialRates out;
    for (;;)
    {
        const auto ch = sample_channels(cfg, rng);
        try
        {
            const auto sinr = rx == Receiver::hybrid ? per_user_sinr(build_hybrid_detector(ch, cfg), ch, cfg)
                                                     : full_rf_sinr(ch, cfg);
            out.rates.resize(sinr.size());
            for (std::size_t k = 0; k < sinr.size(); ++k)
                out.rates[k] = 0.5 * std::log2(1.0 + sinr[k]);
            return out;
        }
        catch (const SingularEquivalentChannel &)
        {
            if (++out.singular > kMaxResamplesPerTrial)
                throw ExcessiveSingularDraws("trial " + std::to_string(t) + " kept drawing singular channels");
        }
    }
}

} // namespace detail

// Ergodic per-user rates 1/2 E{log2(1 + gamma_k)} estimated over independent channel draws.
// Trial t always uses substream (seed, t); the reduction runs in trial order.
inline MonteCarloReport monte_carlo_ergodic_rates(const SystemConfig &cfg, std::size_t trials, std::uint64_t seed,
                                                  unsigned workers = 0, Receiver rx = Receiver::hybrid)
{
    cfg.validate();
    if (trials < 2)
        throw ConfigError("at least two trials are required");

    const auto results = parallel_map(trials, workers, [&](std::size_t t) { return detail::run_trial(cfg, rx, seed, t); });

    const std::size_t K = cfg.num_users;
    MonteCarloReport rep;
    rep.trials = trials;
    rep.seed = seed;
    rep.cfg_echo = cfg;

    std::vector<double> sum(K, 0.0), sumsq(K, 0.0);
    double total = 0.0, totalsq = 0.0;
    for (const auto &r : results)
    {
        double s = 0.0;
        for (std::size_t k = 0; k < K; ++k)
        {
            sum[k] += r.rates[k];
            sumsq[k] += r.rates[k] * r.rates[k];
            s += r.rates[k];
        }
        total += s;
        totalsq += s * s;
        rep.resampled_singular += r.singular;
    }

    const double n = double(trials);
    auto se = [n](double s, double sq) {
        const double mean = s / n;
        const double var = std::max(0.0, (sq - n * mean * mean) / (n - 1.0));
        return std::sqrt(var / n);
    };
    rep.per_user_rate.resize(K);
    rep.per_user_se.resize(K);
    for (std::size_t k = 0; k < K; ++k)
    {
        rep.per_user_rate[k] = sum[k] / n;
        rep.per_user_se[k] = se(sum[k], sumsq[k]);
        rep.sum_rate += rep.per_user_rate[k];
    }
    rep.sum_rate_se = se(total, totalsq);

    if (double(rep.resampled_singular) > kMaxSingularFraction * n)
        throw ExcessiveSingularDraws(std::to_string(rep.resampled_singular) + " singular draws in " +
                                     std::to_string(trials) + " trials");
    return rep;
}

// Same pipeline with the fully digital ZF receiver in place of the hybrid one.
inline MonteCarloReport full_rf_baseline(const SystemConfig &cfg, std::size_t trials, std::uint64_t seed, unsigned workers = 0)
{
    return monte_carlo_ergodic_rates(cfg, trials, seed, workers, Receiver::full_rf);
}

} // namespace relaymimo

#endif
