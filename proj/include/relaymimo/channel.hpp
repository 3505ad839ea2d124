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

#ifndef RELAYMIMO_CHANNEL_HPP
#define RELAYMIMO_CHANNEL_HPP

#include "config.hpp"
#include "rng.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace relaymimo
{

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using CRowVector = Eigen::RowVectorXcd;

// One draw of the two-hop channel pair.
struct ChannelRealization
{
    CMatrix H; // users -> relay, N_r x K, column j ~ CN(0, xi_j I)
    CMatrix G; // relay -> BS, N_d x N_r, i.i.d. CN(0, eta)
};

// Draw order is fixed: H column by column, then G row by row.
inline ChannelRealization sample_channels(const SystemConfig &cfg, RngStream &rng)
{
    const auto K = Eigen::Index(cfg.num_users);
    const auto nr = Eigen::Index(cfg.relay_antennas);
    const auto nd = Eigen::Index(cfg.bs_antennas);

    ChannelRealization ch{CMatrix(nr, K), CMatrix(nd, nr)};
    for (Eigen::Index j = 0; j < K; ++j)
        for (Eigen::Index i = 0; i < nr; ++i)
            ch.H(i, j) = rng.complex_normal(cfg.xi[std::size_t(j)]);
    for (Eigen::Index i = 0; i < nd; ++i)
        for (Eigen::Index j = 0; j < nr; ++j)
            ch.G(i, j) = rng.complex_normal(cfg.eta);
    return ch;
}

// Only the users->relay channel and the cascade G*H.
struct CascadedChannel
{
    CMatrix H;  // N_r x K
    CMatrix GH; // N_d x K
};

// Same draws as sample_channels, but G is consumed one row at a time and never stored.
// Used by statistics that depend on the channel only through H and G*H at very large N_d.
inline CascadedChannel sample_cascaded(const SystemConfig &cfg, RngStream &rng)
{
    const auto K = Eigen::Index(cfg.num_users);
    const auto nr = Eigen::Index(cfg.relay_antennas);
    const auto nd = Eigen::Index(cfg.bs_antennas);

    CascadedChannel out{CMatrix(nr, K), CMatrix(nd, K)};
    for (Eigen::Index j = 0; j < K; ++j)
        for (Eigen::Index i = 0; i < nr; ++i)
            out.H(i, j) = rng.complex_normal(cfg.xi[std::size_t(j)]);
    CRowVector row(nr);
    for (Eigen::Index i = 0; i < nd; ++i)
    {
        for (Eigen::Index j = 0; j < nr; ++j)
            row(j) = rng.complex_normal(cfg.eta);
        out.GH.row(i).noalias() = row * out.H;
    }
    return out;
}

// Relay gain meeting the relay power constraint:
// alpha = sqrt(P_r / (sum_k P_{u,k} ||h_k||^2 + sigma_r^2 N_r)).
// With equal user powers this is P_u Tr(H^H H) in the denominator.
inline double amplification_factor(const CMatrix &H, const SystemConfig &cfg)
{
    double received = 0.0;
    for (Eigen::Index k = 0; k < H.cols(); ++k)
        received += cfg.p_u[std::size_t(k)] * H.col(k).squaredNorm();
    return std::sqrt(cfg.p_r / (received + cfg.sigma2_r * double(H.rows())));
}

} // namespace relaymimo

#endif
