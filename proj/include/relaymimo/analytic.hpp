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

#ifndef RELAYMIMO_ANALYTIC_HPP
#define RELAYMIMO_ANALYTIC_HPP

#include "config.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>

// Closed-form large-array rate expressions. Every rate is in bits per channel use and
// carries the 1/2 factor of the two-hop half-duplex protocol.

namespace relaymimo::analytic
{

inline constexpr double pi = std::numbers::pi;

// Unnormalized sinc, sin(x)/x with sinc(0) = 1.
inline double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

// sinc^2(pi / 2^b): SINR loss factor of b-bit phase shifters.
inline double quantization_loss(unsigned bits) { return std::pow(sinc(pi / std::ldexp(1.0, int(bits))), 2); }

inline double half_log2_1p(double sinr) { return 0.5 * std::log2(1.0 + sinr); }

// Numerator and denominator of the bound's SINR; kept separate so callers can inspect each part.
struct SinrFraction
{
    double numerator;
    double denominator;
    double value() const { return numerator / denominator; }
};

// SINR of the ergodic-rate lower bound for user k (0-based). `loss` is sinc^2(pi/2^b), or 1 for ideal
// phases. Per-user powers enter as P_{u,k} in the numerator and sum_i P_{u,i} xi_i in the denominator.
inline SinrFraction bound_sinr(const SystemConfig &cfg, std::size_t k, double loss = 1.0)
{
    if (k >= cfg.num_users)
        throw std::out_of_range("user index out of range");
    double interference = 0.0;
    for (std::size_t i = 0; i < cfg.num_users; ++i)
        interference += cfg.p_u[i] * cfg.xi[i];
    const double num = pi * cfg.eta * cfg.xi[k] * double(cfg.bs_antennas) * cfg.p_r * cfg.p_u[k] * loss;
    const double den = cfg.sigma2_r * cfg.eta * cfg.p_r * (pi * cfg.delta() * loss + 4.0) +
                       4.0 * cfg.sigma2_d * (interference + cfg.sigma2_r);
    return {num, den};
}

// Ergodic-rate lower bound with ideal phases.
inline double rate_bound(const SystemConfig &cfg, std::size_t k) { return half_log2_1p(bound_sinr(cfg, k).value()); }

// The same bound under b-bit phase quantization.
inline double rate_bound_quantized(const SystemConfig &cfg, std::size_t k, unsigned bits)
{
    if (bits == 0)
        throw std::invalid_argument("bits must be positive");
    return half_log2_1p(bound_sinr(cfg, k, quantization_loss(bits)).value());
}

inline double sum_rate_bound(const SystemConfig &cfg)
{
    double s = 0.0;
    for (std::size_t k = 0; k < cfg.num_users; ++k)
        s += cfg.quant_bits ? rate_bound_quantized(cfg, k, *cfg.quant_bits) : rate_bound(cfg, k);
    return s;
}

// Equivalent SNRs at the relay and the BS plus the user's share of the total path loss.
struct EquivalentSnrs
{
    double chi_r;   // xi_k P_u / sigma_r^2
    double chi_d;   // eta P_r / sigma_d^2
    double xibar_k; // xi_k / sum_i xi_i
};

inline EquivalentSnrs equivalent_snrs(const SystemConfig &cfg, std::size_t k)
{
    return {cfg.xi[k] * cfg.p_u[k] / cfg.sigma2_r, cfg.eta * cfg.p_r / cfg.sigma2_d, cfg.xi[k] / cfg.xi_sum()};
}

// R_k = 1/2 log2(1 + (pi/4) N_d chi_r chi_d / (A_k + B_k + 1)),
// A_k = (pi/4 delta + 1) chi_d, B_k = chi_r / xibar_k.
inline double rate_bound_equivalent(const EquivalentSnrs &s, double n_d, double delta)
{
    const double a = (pi / 4.0 * delta + 1.0) * s.chi_d;
    const double b = s.chi_r / s.xibar_k;
    return half_log2_1p(pi / 4.0 * n_d * s.chi_r * s.chi_d / (a + b + 1.0));
}

enum class Regime
{
    low,           // chi_r, chi_d << 1
    high,          // chi_r, chi_d >> 1
    bs_dominant,   // chi_d >> chi_r, chi_d >> 1: single hop users -> relay
    relay_dominant // chi_r >> chi_d, chi_r >> 1: single hop relay -> BS
};

struct RegimeParams
{
    double chi_r;
    double chi_d;
    double n_d;
    double n_r;
    double delta;
    double xibar_k;
};

inline double regime_rate(Regime regime, const RegimeParams &p)
{
    switch (regime)
    {
    case Regime::low:
        return half_log2_1p(pi / 4.0 * p.n_d * p.chi_r * p.chi_d);
    case Regime::high:
        return half_log2_1p(pi * p.n_d * p.chi_r * p.chi_d / ((pi * p.delta + 4.0) * p.chi_d + 4.0 / p.xibar_k * p.chi_r));
    case Regime::bs_dominant:
        return half_log2_1p(pi * p.delta / (pi * p.delta + 4.0) * p.n_r * p.chi_r);
    case Regime::relay_dominant:
        return half_log2_1p(pi / 4.0 * p.xibar_k * p.n_d * p.chi_d);
    }
    throw std::invalid_argument("unknown regime");
}

// Powers scaled with the BS array as P_u = E_u / N_d^a and P_r = E_r / N_d^b (xi = eta = 1).
struct ScalingExponents
{
    double a = 0.0;     // user-power exponent
    double b_exp = 0.0; // relay-power exponent
    double e_u = 1.0;
    double e_r = 1.0;
    double sigma2_r = 1.0;
    double sigma2_d = 1.0;

    double gamma_r() const { return e_u / sigma2_r; }
    double gamma_d() const { return e_r / sigma2_d; }
};

inline double power_scaled_bound(const ScalingExponents &e, double delta, std::size_t K, double n_d)
{
    const double gr = e.gamma_r(), gd = e.gamma_d();
    const double den = (pi * delta + 4.0) * gd * std::pow(n_d, e.a - 1.0) +
                       4.0 * double(K) * gr * std::pow(n_d, e.b_exp - 1.0) + 4.0 * std::pow(n_d, e.a + e.b_exp - 1.0);
    return half_log2_1p(pi * gr * gd / den);
}

enum class ScalingScheme
{
    interior,   // 0 < a < 1, b = 1 - a
    user_only,  // a = 1, b = 0
    relay_only  // a = 0, b = 1
};

// N_d -> infinity limits of power_scaled_bound on the a + b = 1 line.
inline double power_scaling_limit(ScalingScheme scheme, double gamma_r, double gamma_d, double delta, std::size_t K)
{
    switch (scheme)
    {
    case ScalingScheme::interior:
        return half_log2_1p(pi / 4.0 * gamma_r * gamma_d);
    case ScalingScheme::user_only:
        return half_log2_1p(pi / ((pi * delta + 4.0) * gamma_d + 4.0) * gamma_r * gamma_d);
    case ScalingScheme::relay_only:
        return half_log2_1p(pi / (4.0 * double(K) * gamma_r + 4.0) * gamma_r * gamma_d);
    }
    throw std::invalid_argument("unknown scaling scheme");
}

} // namespace relaymimo::analytic

#endif
