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

#ifndef RELAYMIMO_STATS_HPP
#define RELAYMIMO_STATS_HPP

#include "analytic.hpp"
#include "channel.hpp"
#include "detection.hpp"
#include "errors.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

namespace relaymimo
{

// How a report decides pass/fail against its target.
enum class PassRule
{
    z_score,        // |z| <= tolerance, component-wise for complex estimates
    relative_band,  // |estimate - target| <= tolerance * |target|
    absolute_band,  // |estimate - target| <= tolerance
    upper_bound,    // estimate < target
    exact           // |estimate - target| <= tolerance, no sampling error expected
};

struct StatisticReport
{
    std::string name;
    std::complex<double> estimate;
    double se_re = 0.0;
    double se_im = 0.0;
    double target = 0.0; // targets are real; a complex estimate targets zero imaginary part
    std::size_t trials = 0;
    PassRule rule = PassRule::z_score;
    double tolerance = 3.0;

    static double zscore(double est, double tgt, double se)
    {
        const double d = std::abs(est - tgt);
        if (se > 0.0)
            return d / se;
        return d == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }

    double z_re() const { return zscore(estimate.real(), target, se_re); }
    double z_im() const { return zscore(estimate.imag(), 0.0, se_im); }
    double z() const { return std::max(z_re(), z_im()); }
    double std_error() const { return std::max(se_re, se_im); }

    bool passes() const
    {
        const double d = std::abs(estimate.real() - target);
        switch (rule)
        {
        case PassRule::z_score:
            return z() <= tolerance;
        case PassRule::relative_band:
            return d <= tolerance * std::abs(target);
        case PassRule::absolute_band:
        case PassRule::exact:
            return d <= tolerance;
        case PassRule::upper_bound:
            return estimate.real() < target;
        }
        return false;
    }
};

// Sample mean and standard error of a sequence of complex values, reduced in order.
inline StatisticReport summarize(std::string name, const std::vector<std::complex<double>> &xs, double target)
{
    if (xs.size() < 2)
        throw ConfigError("at least two trials are required");
    const double n = double(xs.size());
    std::complex<double> mean = 0.0;
    for (const auto &x : xs)
        mean += x;
    mean /= n;
    double vr = 0.0, vi = 0.0;
    for (const auto &x : xs)
    {
        vr += (x.real() - mean.real()) * (x.real() - mean.real());
        vi += (x.imag() - mean.imag()) * (x.imag() - mean.imag());
    }
    StatisticReport r;
    r.name = std::move(name);
    r.estimate = mean;
    r.se_re = std::sqrt(vr / (n - 1.0) / n);
    r.se_im = std::sqrt(vi / (n - 1.0) / n);
    r.target = target;
    r.trials = xs.size();
    return r;
}

inline StatisticReport summarize(std::string name, const std::vector<double> &xs, double target)
{
    std::vector<std::complex<double>> c(xs.begin(), xs.end());
    return summarize(std::move(name), c, target);
}

namespace detail
{

inline CVector draw_vector(RngStream &rng, Eigen::Index n, double variance)
{
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v(i) = rng.complex_normal(variance);
    return v;
}

inline double sinc_pi_over(unsigned bits) { return analytic::sinc(std::numbers::pi / std::ldexp(1.0, int(bits))); }

inline CMatrix analog_stage(const CMatrix &GH, const std::optional<unsigned> &bits)
{
    CMatrix w_a = analog_detector_from_cascade(GH);
    if (bits)
        w_a = quantize_phases(w_a, *bits);
    return w_a;
}

} // namespace detail

// E{g_i^H g_j exp(j(phi1 - phi2))}, phi1 = arg(g_j^H h), phi2 = arg(g_i^H h).
// With bits set the two phase factors are the quantized analog weights, as in the analog stage.
inline StatisticReport theorem1_moment(double eta, std::size_t n_r, bool same_index, std::size_t trials, std::uint64_t seed,
                                       unsigned workers = 0, std::optional<unsigned> bits = std::nullopt)
{
    if (!(eta > 0.0) || n_r == 0)
        throw ConfigError("theorem1_moment needs eta > 0 and N_r >= 1");
    const auto n = Eigen::Index(n_r);
    const auto xs = parallel_map(trials, workers, [&](std::size_t t) {
        RngStream rng(seed, t);
        const CVector gi = detail::draw_vector(rng, n, eta);
        const CVector gj = same_index ? gi : detail::draw_vector(rng, n, eta);
        const CVector h = detail::draw_vector(rng, n, 1.0);
        // analog weights applied to rows i and j of G
        double wi = -phase_of(gi.dot(h));
        double wj = -phase_of(gj.dot(h));
        if (bits)
        {
            wi = quantize_phase(wi, *bits);
            wj = quantize_phase(wj, *bits);
        }
        return gi.dot(gj) * std::polar(1.0, wi - wj);
    });

    double target = same_index ? eta * double(n_r) : std::numbers::pi * eta / 4.0;
    if (bits && !same_index)
        target *= analytic::quantization_loss(*bits);
    std::string name = same_index ? "theorem1_same" : "theorem1_cross";
    if (bits)
        name += "_b" + std::to_string(*bits);
    return summarize(name, xs, target);
}

inline double prop1_target(const SystemConfig &cfg)
{
    const double pi = std::numbers::pi;
    const double nd = double(cfg.bs_antennas), nr = double(cfg.relay_antennas);
    if (cfg.quant_bits)
        return cfg.eta * (pi * (nd - 1.0) / 4.0 * analytic::quantization_loss(*cfg.quant_bits) + nr);
    return cfg.eta * (pi * nd / 4.0 + nr - pi / 4.0);
}

// E{[W_a G G^H W_a^H]_kk}; each trial contributes the average over users.
inline StatisticReport prop1_diag(const SystemConfig &cfg, std::size_t trials, std::uint64_t seed, unsigned workers = 0)
{
    cfg.validate();
    const auto xs = parallel_map(trials, workers, [&](std::size_t t) {
        RngStream rng(seed, t);
        const auto ch = sample_channels(cfg, rng);
        const CMatrix w_a = detail::analog_stage(ch.G * ch.H, cfg.quant_bits);
        return (w_a * ch.G).rowwise().squaredNorm().mean();
    });
    return summarize(cfg.quant_bits ? "prop1_diag_b" + std::to_string(*cfg.quant_bits) : "prop1_diag", xs, prop1_target(cfg));
}

struct Prop2Report
{
    StatisticReport diag;    // exact: every diagonal entry equals 1
    StatisticReport offdiag; // mean |[W_a W_a^H]_pq|, p != q, below 3/sqrt(N_d)
};

inline Prop2Report prop2_identity(const SystemConfig &cfg, std::size_t trials, std::uint64_t seed, unsigned workers = 0)
{
    cfg.validate();
    if (cfg.num_users < 2)
        throw ConfigError("the off-diagonal part needs K >= 2");
    struct Draw
    {
        double diag_dev;
        double diag_mean;
        double offdiag;
    };
    const auto draws = parallel_map(trials, workers, [&](std::size_t t) {
        RngStream rng(seed, t);
        const auto cc = sample_cascaded(cfg, rng);
        const CMatrix w_a = detail::analog_stage(cc.GH, cfg.quant_bits);
        const CMatrix ww = w_a * w_a.adjoint();
        Draw d{0.0, 0.0, 0.0};
        const auto K = ww.rows();
        std::size_t pairs = 0;
        for (Eigen::Index p = 0; p < K; ++p)
        {
            d.diag_dev = std::max(d.diag_dev, std::abs(ww(p, p) - 1.0));
            d.diag_mean += ww(p, p).real() / double(K);
            for (Eigen::Index q = p + 1; q < K; ++q, ++pairs)
                d.offdiag += std::abs(ww(p, q));
        }
        d.offdiag /= double(pairs);
        return d;
    });

    std::vector<double> diag, off;
    double worst = 0.0;
    for (const auto &d : draws)
    {
        diag.push_back(d.diag_mean);
        off.push_back(d.offdiag);
        worst = std::max(worst, d.diag_dev);
    }
    const std::string suffix = "_Nd" + std::to_string(cfg.bs_antennas);
    Prop2Report rep{summarize("prop2_diag" + suffix, diag, 1.0), summarize("prop2_offdiag" + suffix, off, 0.0)};
    // report the worst deviation so a single bad draw cannot hide in the mean
    rep.diag.estimate = 1.0 + worst;
    rep.diag.se_re = rep.diag.se_im = 0.0;
    rep.diag.rule = PassRule::exact;
    rep.diag.tolerance = 1e-12;
    rep.offdiag.target = 3.0 / std::sqrt(double(cfg.bs_antennas));
    rep.offdiag.rule = PassRule::upper_bound;
    return rep;
}

struct DecayFit
{
    std::vector<Prop2Report> points;
    StatisticReport slope; // log-log slope of mean |offdiag| against N_d, target -1/2
};

// Off-diagonal decay over a grid of N_d with N_r = N_d / delta held proportional.
inline DecayFit prop2_decay(const SystemConfig &base, const std::vector<std::size_t> &n_d_grid, std::size_t trials,
                            std::uint64_t seed, unsigned workers = 0, double band = 0.15)
{
    if (n_d_grid.size() < 2)
        throw ConfigError("decay fit needs at least two N_d values");
    DecayFit fit;
    std::vector<double> x, y;
    for (std::size_t i = 0; i < n_d_grid.size(); ++i)
    {
        SystemConfig cfg = base;
        cfg.bs_antennas = n_d_grid[i];
        cfg.relay_antennas = std::max<std::size_t>(cfg.num_users, std::size_t(std::llround(double(n_d_grid[i]) / base.delta())));
        fit.points.push_back(prop2_identity(cfg, trials, seed + i, workers));
        x.push_back(std::log(double(n_d_grid[i])));
        y.push_back(std::log(fit.points.back().offdiag.estimate.real()));
    }

    const double n = double(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        mx += x[i] / n;
        my += y[i] / n;
    }
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    const double slope = sxy / sxx;
    double rss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        const double r = y[i] - my - slope * (x[i] - mx);
        rss += r * r;
    }
    fit.slope.name = "prop2_offdiag_slope";
    fit.slope.estimate = slope;
    fit.slope.se_re = x.size() > 2 ? std::sqrt(rss / (n - 2.0) / sxx) : 0.0;
    fit.slope.target = -0.5;
    fit.slope.trials = trials;
    fit.slope.rule = PassRule::absolute_band;
    fit.slope.tolerance = band;
    return fit;
}

namespace detail
{

// Draw cascades until the equivalent channel is invertible; returns the number of discarded draws.
template <typename Fn>
std::size_t with_regular_draw(const SystemConfig &cfg, RngStream &rng, bool cascaded_only, Fn &&fn)
{
    std::size_t singular = 0;
    for (;;)
    {
        try
        {
            if (cascaded_only)
            {
                const auto cc = sample_cascaded(cfg, rng);
                fn(cc.H, cc.GH, static_cast<const CMatrix *>(nullptr));
            }
            else
            {
                const auto ch = sample_channels(cfg, rng);
                fn(ch.H, CMatrix(ch.G * ch.H), &ch.G);
            }
            return singular;
        }
        catch (const SingularEquivalentChannel &)
        {
            if (++singular > kMaxResamplesPerTrial)
                throw ExcessiveSingularDraws("statistic kept drawing singular channels");
        }
    }
}

} // namespace detail

// sqrt(N_r N_d) W_d: one report per diagonal entry plus the mean off-diagonal entry (target 0).
inline std::vector<StatisticReport> lemma2_wd_limit(const SystemConfig &cfg, std::size_t trials, std::uint64_t seed,
                                                    unsigned workers = 0)
{
    cfg.validate();
    const double scale = std::sqrt(double(cfg.relay_antennas) * double(cfg.bs_antennas));
    const auto draws = parallel_map(trials, workers, [&](std::size_t t) {
        RngStream rng(seed, t);
        CMatrix wd;
        detail::with_regular_draw(cfg, rng, true, [&](const CMatrix &, const CMatrix &GH, const CMatrix *) {
            wd = scale * zf_digital_detector_from_cascade(detail::analog_stage(GH, cfg.quant_bits), GH);
        });
        return wd;
    });

    const std::size_t K = cfg.num_users;
    const double q = cfg.quant_bits ? detail::sinc_pi_over(*cfg.quant_bits) : 1.0;
    const std::string tag = cfg.quant_bits ? "_b" + std::to_string(*cfg.quant_bits) : "";
    std::vector<StatisticReport> out;
    for (std::size_t k = 0; k < K; ++k)
    {
        if (cfg.xi[k] == 0.0)
            continue;
        std::vector<std::complex<double>> xs;
        xs.reserve(trials);
        for (const auto &w : draws)
            xs.push_back(w(Eigen::Index(k), Eigen::Index(k)));
        const double target = 2.0 / std::sqrt(std::numbers::pi * cfg.eta * cfg.xi[k]) / q;
        out.push_back(summarize("lemma2_diag" + tag + "_k" + std::to_string(k + 1), xs, target));
    }
    if (K >= 2)
    {
        std::vector<std::complex<double>> xs;
        xs.reserve(trials);
        for (const auto &w : draws)
        {
            std::complex<double> s = 0.0;
            for (std::size_t i = 0; i < K; ++i)
                for (std::size_t j = 0; j < K; ++j)
                    if (i != j)
                        s += w(Eigen::Index(i), Eigen::Index(j));
            xs.push_back(s / double(K * (K - 1)));
        }
        out.push_back(summarize("lemma2_offdiag" + tag, xs, 0.0));
    }
    return out;
}

inline double lemma3_target(const SystemConfig &cfg, std::size_t k)
{
    const double pi = std::numbers::pi;
    const double s2 = cfg.quant_bits ? analytic::quantization_loss(*cfg.quant_bits) : 1.0;
    return (pi * cfg.delta() * s2 + 4.0) / (pi * cfg.xi[k] * s2);
}

inline double lemma4_target(const SystemConfig &cfg, std::size_t k)
{
    const double s2 = cfg.quant_bits ? analytic::quantization_loss(*cfg.quant_bits) : 1.0;
    double load = 0.0;
    for (std::size_t i = 0; i < cfg.num_users; ++i)
        load += cfg.p_u[i] * cfg.xi[i];
    return 4.0 * (load + cfg.sigma2_r) / (std::numbers::pi * cfg.eta * cfg.xi[k] * cfg.p_r * s2);
}

// N_d E{[T G G^H T^H]_kk} and N_d E{[T T^H]_kk / alpha^2} with T = W_d W_a, per user.
// The ratio is formed per realization and then averaged.
inline std::vector<StatisticReport> lemma34_limits(const SystemConfig &cfg, std::size_t trials, std::uint64_t seed,
                                                   unsigned workers = 0, double band = 0.05)
{
    cfg.validate();
    if (!(cfg.p_r > 0.0))
        throw ConfigError("the noise statistic needs p_r > 0");
    const double nd = double(cfg.bs_antennas);
    const auto draws = parallel_map(trials, workers, [&](std::size_t t) {
        RngStream rng(seed, t);
        NoiseTerms terms;
        double alpha = 0.0;
        detail::with_regular_draw(cfg, rng, false, [&](const CMatrix &H, const CMatrix &GH, const CMatrix *G) {
            const CMatrix w_a = detail::analog_stage(GH, cfg.quant_bits);
            const CMatrix w_d = zf_digital_detector_from_cascade(w_a, GH);
            terms = noise_terms(w_d * w_a, *G);
            alpha = amplification_factor(H, cfg);
        });
        terms.relay *= nd;
        terms.bs *= nd / (alpha * alpha);
        return terms;
    });

    const std::string tag = cfg.quant_bits ? "_b" + std::to_string(*cfg.quant_bits) : "";
    std::vector<StatisticReport> out;
    for (std::size_t k = 0; k < cfg.num_users; ++k)
    {
        if (cfg.xi[k] == 0.0)
            continue;
        std::vector<double> relay, bs;
        for (const auto &d : draws)
        {
            relay.push_back(d.relay(Eigen::Index(k)));
            bs.push_back(d.bs(Eigen::Index(k)));
        }
        auto r3 = summarize("lemma3" + tag + "_k" + std::to_string(k + 1), relay, lemma3_target(cfg, k));
        auto r4 = summarize("lemma4" + tag + "_k" + std::to_string(k + 1), bs, lemma4_target(cfg, k));
        r3.rule = r4.rule = PassRule::relative_band;
        r3.tolerance = r4.tolerance = band;
        out.push_back(std::move(r3));
        out.push_back(std::move(r4));
    }
    return out;
}

// Two-sided Kolmogorov-Smirnov distance between the sample and U[0, 2pi).
inline double ks_uniform(std::vector<double> phases)
{
    if (phases.empty())
        throw ConfigError("KS test needs samples");
    std::sort(phases.begin(), phases.end());
    const double n = double(phases.size());
    const double two_pi = 2.0 * std::numbers::pi;
    double d = 0.0;
    for (std::size_t i = 0; i < phases.size(); ++i)
    {
        const double f = std::clamp(phases[i] / two_pi, 0.0, 1.0);
        d = std::max({d, double(i + 1) / n - f, f - double(i) / n});
    }
    return d;
}

// Asymptotic 1% critical value of the one-sample KS distance.
inline double ks_critical_1pct(std::size_t n) { return 1.63 / std::sqrt(double(n)); }

inline double wrap_two_pi(double theta)
{
    const double two_pi = 2.0 * std::numbers::pi;
    theta = std::fmod(theta, two_pi);
    return theta < 0.0 ? theta + two_pi : theta;
}

// Phases of the first column of (GH)^H. Entries of one column are i.i.d. given H, so
// samples are pooled across draws without dependence between them.
inline std::vector<double> analog_phase_samples(const SystemConfig &cfg, std::size_t samples, std::uint64_t seed,
                                                unsigned workers = 0)
{
    cfg.validate();
    const std::size_t per_draw = cfg.bs_antennas;
    const std::size_t draws = (samples + per_draw - 1) / per_draw;
    const auto cols = parallel_map(draws, workers, [&](std::size_t t) {
        RngStream rng(seed, t);
        const auto cc = sample_cascaded(cfg, rng);
        std::vector<double> ph(per_draw);
        for (std::size_t i = 0; i < per_draw; ++i)
            ph[i] = wrap_two_pi(-phase_of(cc.GH(Eigen::Index(i), 0)));
        return ph;
    });
    std::vector<double> out;
    out.reserve(draws * per_draw);
    for (const auto &c : cols)
        out.insert(out.end(), c.begin(), c.end());
    out.resize(samples);
    return out;
}

// Reported on the Kolmogorov scale: target 0, std_error 1/sqrt(n), so z = sqrt(n) D and the
// 1% test passes when D stays below the critical value.
inline StatisticReport phase_uniformity(const SystemConfig &cfg, std::size_t samples, std::uint64_t seed, unsigned workers = 0)
{
    if (samples < 2)
        throw ConfigError("phase test needs samples");
    StatisticReport r;
    r.name = "phase_ks";
    r.estimate = ks_uniform(analog_phase_samples(cfg, samples, seed, workers));
    r.se_re = 1.0 / std::sqrt(double(samples));
    r.target = 0.0;
    r.trials = samples;
    r.rule = PassRule::absolute_band;
    r.tolerance = ks_critical_1pct(samples);
    return r;
}

inline void write_stats_csv(std::ostream &os, const std::vector<StatisticReport> &reports)
{
    os << "name,estimate_re,estimate_im,std_error,target,trials,z\n";
    for (const auto &r : reports)
        os << r.name << ',' << format_number(r.estimate.real()) << ',' << format_number(r.estimate.imag()) << ','
           << format_number(r.std_error()) << ',' << format_number(r.target) << ',' << r.trials << ','
           << format_number(r.z()) << '\n';
}

} // namespace relaymimo

#endif
