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

#ifndef RELAYMIMO_DETECTION_HPP
#define RELAYMIMO_DETECTION_HPP

#include "channel.hpp"
#include "errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <vector>

namespace relaymimo
{

// Largest condition number of W_a*G*H accepted as invertible.
inline constexpr double kMaxConditionNumber = 1e12;
// Consecutive singular draws tolerated inside one trial before giving up.
inline constexpr std::size_t kMaxResamplesPerTrial = 64;

// Hybrid receiver for one channel realization.
struct HybridDetector
{
    CMatrix w_a;  // K x N_d, entries of modulus 1/sqrt(N_d)
    CMatrix w_d;  // K x K, inverse of W_a*G*H
    double alpha; // relay gain the detector was built under
    std::optional<unsigned> quantized;
};

// Phase of z in (-pi, pi]; the phase of an exact zero is 0.
inline double phase_of(std::complex<double> z)
{
    if (z == std::complex<double>(0.0, 0.0))
        return 0.0;
    return std::arg(z);
}

// Nearest codeword of the b-bit codebook {0, +-2pi/2^b, ..., +-(2^(b-1)-1)2pi/2^b, pi}.
// Ties go to the codeword with the smaller phase value. Result lies in (-pi, pi].
inline double quantize_phase(double theta, unsigned bits)
{
    constexpr double pi = std::numbers::pi;
    const double step = 2.0 * pi / std::ldexp(1.0, int(bits));
    const long long half = 1LL << (bits - 1);

    // wrap into (-pi, pi]
    theta = std::remainder(theta, 2.0 * pi);
    if (theta <= -pi)
        theta += 2.0 * pi;

    const double t = theta / step;
    long long q = static_cast<long long>(std::ceil(t - 0.5));
    if (q <= -half)
    {
        // -pi and pi are the same codeword; on an exact tie against -pi+step, prefer the smaller value
        if (t - 0.5 == double(-half))
            q = -half + 1;
        else
            q = half;
    }
    return double(q) * step;
}

// Replaces each entry's phase with its nearest codeword, keeping the modulus.
inline CMatrix quantize_phases(const CMatrix &w, unsigned bits)
{
    CMatrix out(w.rows(), w.cols());
    for (Eigen::Index j = 0; j < w.cols(); ++j)
        for (Eigen::Index i = 0; i < w.rows(); ++i)
            out(i, j) = std::polar(std::abs(w(i, j)), quantize_phase(phase_of(w(i, j)), bits));
    return out;
}

// Phase-aligning analog stage from the cascade G*H (N_d x K):
// [W_a]_{ij} = exp(j * angle([(GH)^H]_{ij})) / sqrt(N_d).
inline CMatrix analog_detector_from_cascade(const CMatrix &GH)
{
    const auto nd = GH.rows();
    const auto K = GH.cols();
    const double scale = 1.0 / std::sqrt(double(nd));
    CMatrix w_a(K, nd);
    for (Eigen::Index i = 0; i < K; ++i)
        for (Eigen::Index j = 0; j < nd; ++j)
            w_a(i, j) = std::polar(scale, -phase_of(GH(j, i)));
    return w_a;
}

inline CMatrix analog_detector(const ChannelRealization &ch)
{
    return analog_detector_from_cascade(ch.G * ch.H);
}

// Zero-forcing inverse of the K x K equivalent channel W_a*(G*H).
// Throws SingularEquivalentChannel when the condition number exceeds kMaxConditionNumber.
inline CMatrix zf_digital_detector_from_cascade(const CMatrix &w_a, const CMatrix &GH)
{
    const CMatrix eq = w_a * GH;
    Eigen::JacobiSVD<CMatrix> svd(eq);
    const auto &s = svd.singularValues();
    const double smax = s(0);
    const double smin = s(s.size() - 1);
    if (!(smax > 0.0) || !(smin > 0.0) || smax / smin > kMaxConditionNumber || !std::isfinite(smax / smin))
        throw SingularEquivalentChannel("equivalent channel W_a*G*H is singular");
    return eq.fullPivLu().inverse();
}

inline CMatrix zf_digital_detector(const CMatrix &w_a, const ChannelRealization &ch)
{
    return zf_digital_detector_from_cascade(w_a, ch.G * ch.H);
}

// Analog stage (quantized when cfg.quant_bits is set), ZF digital stage and relay gain.
inline HybridDetector build_hybrid_detector(const ChannelRealization &ch, const SystemConfig &cfg)
{
    const CMatrix GH = ch.G * ch.H;
    CMatrix w_a = analog_detector_from_cascade(GH);
    if (cfg.quant_bits)
        w_a = quantize_phases(w_a, *cfg.quant_bits);
    CMatrix w_d = zf_digital_detector_from_cascade(w_a, GH);
    return {std::move(w_a), std::move(w_d), amplification_factor(ch.H, cfg), cfg.quant_bits};
}

// Per-user noise enhancement of a K x N_d linear combiner T applied at the BS:
// relay[k] = [T G G^H T^H]_kk and bs[k] = [T T^H]_kk.
struct NoiseTerms
{
    Eigen::VectorXd relay;
    Eigen::VectorXd bs;
};

inline NoiseTerms noise_terms(const CMatrix &combiner, const CMatrix &G)
{
    const CMatrix tg = combiner * G;
    return {tg.rowwise().squaredNorm(), combiner.rowwise().squaredNorm()};
}

// gamma_k = P_{u,k} / (sigma_r^2 [T G G^H T^H]_kk + (sigma_d^2 / alpha^2) [T T^H]_kk)
inline std::vector<double> sinr_from_terms(const NoiseTerms &t, double alpha, const SystemConfig &cfg)
{
    std::vector<double> out(cfg.num_users);
    const double bs_scale = cfg.sigma2_d / (alpha * alpha);
    for (std::size_t k = 0; k < out.size(); ++k)
    {
        const auto i = Eigen::Index(k);
        out[k] = cfg.p_u[k] / (cfg.sigma2_r * t.relay(i) + bs_scale * t.bs(i));
    }
    return out;
}

inline std::vector<double> per_user_sinr(const HybridDetector &det, const ChannelRealization &ch, const SystemConfig &cfg)
{
    const CMatrix combiner = det.w_d * det.w_a;
    return sinr_from_terms(noise_terms(combiner, ch.G), det.alpha, cfg);
}

// Fully digital reference receiver: ZF pseudoinverse of G*H over all N_d antennas.
inline CMatrix full_rf_combiner(const ChannelRealization &ch)
{
    const CMatrix GH = ch.G * ch.H;
    const CMatrix gram = GH.adjoint() * GH;
    Eigen::JacobiSVD<CMatrix> svd(gram);
    const auto &s = svd.singularValues();
    // cond(gram) = cond(GH)^2
    if (!(s(s.size() - 1) > 0.0) || std::sqrt(s(0) / s(s.size() - 1)) > kMaxConditionNumber)
        throw SingularEquivalentChannel("cascade G*H is rank deficient");
    return gram.fullPivLu().solve(GH.adjoint());
}

inline std::vector<double> full_rf_sinr(const ChannelRealization &ch, const SystemConfig &cfg)
{
    const CMatrix combiner = full_rf_combiner(ch);
    return sinr_from_terms(noise_terms(combiner, ch.G), amplification_factor(ch.H, cfg), cfg);
}

} // namespace relaymimo

#endif
