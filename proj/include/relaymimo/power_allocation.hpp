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

#ifndef RELAYMIMO_POWER_ALLOCATION_HPP
#define RELAYMIMO_POWER_ALLOCATION_HPP

#include "config.hpp"
#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

namespace relaymimo::pa
{

// Sum-rate constants for user power split P_{u,k} = mu_k P_T.
struct PaConstants
{
    std::vector<double> l; // pi eta N_d P_r P_T xi_k
    std::vector<double> m; // 4 sigma_d^2 P_T xi_k
    double n = 0.0;        // sigma_r^2 eta P_r (pi delta + 4) + 4 sigma_d^2 sigma_r^2

    std::size_t K() const { return l.size(); }
};

inline PaConstants pa_constants(const SystemConfig &cfg, double p_t)
{
    cfg.validate();
    if (!(p_t > 0.0))
        throw ConfigError("P_T must be positive");
    const double pi = std::numbers::pi;
    PaConstants c;
    for (double xi : cfg.xi)
    {
        c.l.push_back(pi * cfg.eta * double(cfg.bs_antennas) * cfg.p_r * p_t * xi);
        c.m.push_back(4.0 * cfg.sigma2_d * p_t * xi);
    }
    c.n = cfg.sigma2_r * cfg.eta * cfg.p_r * (pi * cfg.delta() + 4.0) + 4.0 * cfg.sigma2_d * cfg.sigma2_r;
    return c;
}

inline double weighted_load(const std::vector<double> &mu, const PaConstants &c)
{
    double s = 0.0;
    for (std::size_t k = 0; k < mu.size(); ++k)
        s += c.m[k] * mu[k];
    return s;
}

// Objective in nats, the form the optimizer works with.
inline double sum_rate_nats(const std::vector<double> &mu, const PaConstants &c)
{
    const double den = weighted_load(mu, c) + c.n;
    double s = 0.0;
    for (std::size_t k = 0; k < mu.size(); ++k)
        s += std::log1p(c.l[k] * mu[k] / den);
    return s;
}

// Reported sum rate, 1/2 sum log2(1 + l_k mu_k / (sum m mu + n)).
inline double sum_rate(const std::vector<double> &mu, const PaConstants &c)
{
    return 0.5 * sum_rate_nats(mu, c) / std::numbers::ln2;
}

inline std::vector<double> mu_from_multipliers(double v, double w, double rho, const PaConstants &c)
{
    std::vector<double> mu(c.K(), 0.0);
    for (std::size_t k = 0; k < mu.size(); ++k)
        if (c.l[k] > 0.0)
            mu[k] = std::max(1.0 / (v + w * c.m[k]) - (rho + c.n) / c.l[k], 0.0);
    return mu;
}

enum class Status
{
    optimal,     // v > 0 and w > 0
    boundary_w0, // w = 0, water-filling shape
    boundary_v0  // v = 0
};

inline const char *to_string(Status s)
{
    switch (s)
    {
    case Status::optimal:
        return "optimal";
    case Status::boundary_w0:
        return "boundary_w0";
    case Status::boundary_v0:
        return "boundary_v0";
    }
    return "unknown";
}

struct PaSolution
{
    std::vector<double> mu;
    double rho = 0.0;
    double v = 0.0;
    double w = 0.0;
    double sum_rate = 0.0; // bits
    double kkt_residual = 0.0;
    Status status = Status::optimal;
};

// Max violation of the fixed-rho KKT system: stationarity on the support, dual feasibility
// off it, complementary slackness of both budget constraints, and primal feasibility.
inline double kkt_residual(const std::vector<double> &mu, double rho, double v, double w, const PaConstants &c)
{
    double r = 0.0;
    double total = 0.0;
    for (std::size_t k = 0; k < mu.size(); ++k)
    {
        total += mu[k];
        r = std::max(r, std::max(0.0, -mu[k]));
        if (c.l[k] <= 0.0)
            continue;
        const double grad = c.l[k] / (rho + c.n + c.l[k] * mu[k]);
        const double price = v + w * c.m[k];
        if (mu[k] > 0.0)
            r = std::max(r, std::abs(price - grad));
        else
            r = std::max(r, std::max(0.0, grad - price));
    }
    const double load = weighted_load(mu, c);
    r = std::max({r, std::abs(v * (total - 1.0)), std::abs(w * (load - rho))});
    r = std::max({r, std::max(0.0, total - 1.0), std::max(0.0, load - rho), std::max(0.0, -v), std::max(0.0, -w)});
    return r;
}

inline double kkt_residual(const PaSolution &sol, const PaConstants &c)
{
    return kkt_residual(sol.mu, sol.rho, sol.v, sol.w, c);
}

namespace detail
{

inline constexpr std::size_t kOuterBudget = 200;
inline constexpr std::size_t kInnerBudget = 200;
inline constexpr std::size_t kPrescan = 65;

// Smallest u >= 0 with sum_k max(coef_k u - floor_k, 0) = target (coef_k > 0, target > 0).
// Entries with coef_k = 0 are ignored.
inline double water_level(const std::vector<double> &coef, const std::vector<double> &floor, double target)
{
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < coef.size(); ++k)
        if (coef[k] > 0.0)
            idx.push_back(k);
    if (idx.empty())
        throw ConfigError("water level needs at least one active entry");
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return floor[a] / coef[a] < floor[b] / coef[b]; });
    double sc = 0.0, sf = 0.0;
    for (std::size_t j = 0; j < idx.size(); ++j)
    {
        sc += coef[idx[j]];
        sf += floor[idx[j]];
        const double u = (target + sf) / sc;
        const bool last = j + 1 == idx.size();
        if (last || u <= floor[idx[j + 1]] / coef[idx[j + 1]])
            return u;
    }
    return (target + sf) / sc;
}

struct Inner
{
    std::vector<double> mu;
    double v = 0.0;
    double w = 0.0;
    Status status = Status::optimal;
};

inline double sum(const std::vector<double> &x) { return std::accumulate(x.begin(), x.end(), 0.0); }

// Bisection on a decreasing function f over [lo, hi] for f = 0, stopping at double resolution.
template <typename F>
double bisect_decreasing(F &&f, double lo, double hi, std::size_t budget, const char *what)
{
    for (std::size_t it = 0; it < budget; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            return mid;
        if (f(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    throw NonConvergence(std::string("bisection budget exhausted for ") + what);
}

// Fixed-rho problem with both budgets relaxed to inequalities. Users with l_k = 0 stay at 0.
inline Inner solve_inner(double rho, const PaConstants &c)
{
    const std::size_t K = c.K();
    std::vector<double> a(K, 0.0), ones(K, 0.0), inv_m(K, 0.0), ma(K, 0.0);
    for (std::size_t k = 0; k < K; ++k)
        if (c.l[k] > 0.0)
        {
            a[k] = (rho + c.n) / c.l[k];
            ones[k] = 1.0;
            inv_m[k] = 1.0 / c.m[k];
            ma[k] = c.m[k] * a[k];
        }

    // w = 0: mu_k = max(u - a_k, 0), sum mu = 1
    {
        const double u = water_level(ones, a, 1.0);
        Inner in{mu_from_multipliers(1.0 / u, 0.0, rho, c), 1.0 / u, 0.0, Status::boundary_w0};
        if (weighted_load(in.mu, c) <= rho)
            return in;
    }
    // v = 0: m_k mu_k = max(u - m_k a_k, 0), sum m mu = rho
    {
        const double u = water_level(ones, ma, rho);
        Inner in{mu_from_multipliers(0.0, 1.0 / u, rho, c), 0.0, 1.0 / u, Status::boundary_v0};
        if (sum(in.mu) <= 1.0)
            return in;
    }

    // Both multipliers positive. For each w, v >= 0 solves sum mu = 1; then w solves sum m mu = rho.
    // w is capped where v reaches 0 with sum mu still 1.
    const double w_max = 1.0 / water_level(inv_m, a, 1.0);
    auto v_for = [&](double w) {
        double hi = 1.0;
        for (std::size_t k = 0; k < K; ++k)
            if (c.l[k] > 0.0)
                hi = std::max(hi, 1.0 / a[k]);
        // at v = hi every mu_k is 0, so sum mu - 1 < 0
        return bisect_decreasing([&](double v) { return sum(mu_from_multipliers(v, w, rho, c)) - 1.0; }, 0.0, hi,
                                 kInnerBudget, "v");
    };
    const double w = bisect_decreasing(
        [&](double w) { return weighted_load(mu_from_multipliers(v_for(w), w, rho, c), c) - rho; }, 0.0, w_max,
        kInnerBudget, "w");
    const double v = v_for(w);
    return {mu_from_multipliers(v, w, rho, c), v, w, Status::optimal};
}

} // namespace detail

// Maximizes the sum rate over the simplex. Outer golden-section search over rho in
// [min m, max m] after a coarse scan; inner closed form with multiplier bisection.
inline PaSolution solve_optimal_pa(const PaConstants &c)
{
    const std::size_t K = c.K();
    if (K == 0 || c.m.size() != K)
        throw ConfigError("PA constants need K >= 1 matching entries");
    if (!(c.n > 0.0))
        throw ConfigError("PA constant n must be positive");
    std::vector<std::size_t> active;
    for (std::size_t k = 0; k < K; ++k)
    {
        if (c.l[k] < 0.0 || c.m[k] < 0.0)
            throw ConfigError("PA constants must be nonnegative");
        if (c.l[k] > 0.0)
            active.push_back(k);
    }
    if (active.empty())
        throw ConfigError("every user has zero path loss");

    PaSolution sol;
    if (active.size() == 1)
    {
        const std::size_t k = active.front();
        sol.mu.assign(K, 0.0);
        sol.mu[k] = 1.0;
        sol.rho = c.m[k];
        sol.v = c.l[k] / (sol.rho + c.n + c.l[k]);
        sol.status = Status::boundary_w0;
    }
    else
    {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (std::size_t k : active)
        {
            lo = std::min(lo, c.m[k]);
            hi = std::max(hi, c.m[k]);
        }
        auto value = [&](double rho) { return sum_rate_nats(detail::solve_inner(rho, c).mu, c); };

        double best = lo;
        if (hi > lo)
        {
            std::size_t evals = 0;
            const double step = (hi - lo) / double(detail::kPrescan - 1);
            std::size_t bi = 0;
            double bv = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < detail::kPrescan; ++i, ++evals)
            {
                const double f = value(lo + step * double(i));
                if (f > bv)
                {
                    bv = f;
                    bi = i;
                }
            }
            double a = lo + step * double(bi == 0 ? 0 : bi - 1);
            double b = std::min(hi, lo + step * double(bi + 1));
            const double g = (std::sqrt(5.0) - 1.0) / 2.0;
            double x1 = b - g * (b - a), x2 = a + g * (b - a);
            double f1 = value(x1), f2 = value(x2);
            evals += 2;
            while (b - a > 1e-13 * std::max(1.0, std::abs(b)))
            {
                if (++evals > detail::kOuterBudget)
                    throw NonConvergence("outer rho search exhausted its budget");
                if (f1 >= f2)
                {
                    b = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = b - g * (b - a);
                    f1 = value(x1);
                }
                else
                {
                    a = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = a + g * (b - a);
                    f2 = value(x2);
                }
            }
            best = f1 >= f2 ? x1 : x2;
            // the bracket ends were scanned points; keep them if they are better
            if (bv > std::max(f1, f2))
                best = lo + step * double(bi);
        }

        auto in = detail::solve_inner(best, c);
        // a slack load budget means the same allocation is optimal at rho = sum m mu
        const double load = weighted_load(in.mu, c);
        if (std::abs(load - best) > 1e-10 * std::max(1.0, best))
        {
            best = load;
            in = detail::solve_inner(best, c);
        }
        sol.mu = std::move(in.mu);
        sol.rho = best;
        sol.v = in.v;
        sol.w = in.w;
        sol.status = in.status;
    }
    sol.sum_rate = sum_rate(sol.mu, c);
    sol.kkt_residual = kkt_residual(sol, c);
    return sol;
}

// Least-squares nonnegative (v, w) for a given allocation with rho = sum m mu, so the KKT
// residual of an arbitrary point can be assessed.
inline PaSolution fit_multipliers(const std::vector<double> &mu, const PaConstants &c)
{
    PaSolution sol;
    sol.mu = mu;
    sol.rho = weighted_load(mu, c);
    std::vector<double> t, m;
    for (std::size_t k = 0; k < mu.size(); ++k)
        if (mu[k] > 0.0 && c.l[k] > 0.0)
        {
            t.push_back(c.l[k] / (sol.rho + c.n + c.l[k] * mu[k]));
            m.push_back(c.m[k]);
        }
    auto residual = [&](double v, double w) {
        double r = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i)
            r += (v + w * m[i] - t[i]) * (v + w * m[i] - t[i]);
        return r;
    };
    double bv = 0.0, bw = 0.0, br = std::numeric_limits<double>::infinity();
    auto consider = [&](double v, double w) {
        if (v < 0.0 || w < 0.0)
            return;
        const double r = residual(v, w);
        if (r < br)
        {
            br = r;
            bv = v;
            bw = w;
        }
    };
    if (!t.empty())
    {
        const double n = double(t.size());
        const double st = std::accumulate(t.begin(), t.end(), 0.0);
        double sm = 0.0, smm = 0.0, smt = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i)
        {
            sm += m[i];
            smm += m[i] * m[i];
            smt += m[i] * t[i];
        }
        const double det = n * smm - sm * sm;
        if (det > 1e-14 * n * smm)
            consider((smm * st - sm * smt) / det, (n * smt - sm * st) / det);
        consider(st / n, 0.0);
        if (smm > 0.0)
            consider(0.0, smt / smm);
    }
    sol.v = bv;
    sol.w = bw;
    sol.status = bw == 0.0 ? Status::boundary_w0 : (bv == 0.0 ? Status::boundary_v0 : Status::optimal);
    sol.sum_rate = sum_rate(mu, c);
    sol.kkt_residual = kkt_residual(sol, c);
    return sol;
}

inline std::vector<double> equal_pa(std::size_t K) { return std::vector<double>(K, 1.0 / double(K)); }

// Interference-free water-filling baseline: mu_k = max(lambda - n / l_k, 0), sum mu = 1.
inline std::vector<double> waterfilling_pa(const PaConstants &c)
{
    std::vector<double> ones(c.K(), 0.0), floor(c.K(), 0.0);
    for (std::size_t k = 0; k < c.K(); ++k)
        if (c.l[k] > 0.0)
        {
            ones[k] = 1.0;
            floor[k] = c.n / c.l[k];
        }
    const double lambda = detail::water_level(ones, floor, 1.0);
    std::vector<double> mu(c.K(), 0.0);
    for (std::size_t k = 0; k < c.K(); ++k)
        if (c.l[k] > 0.0)
            mu[k] = std::max(lambda - floor[k], 0.0);
    return mu;
}

enum class LimitRegime
{
    pt_to_zero,
    pt_to_inf
};

// Small-P_T form mu_k = max(c1 - c2 / xi_k, 0), where c2 = n xi_k / l_k (user independent)
// and c1 normalizes; large-P_T form mu_k = c3 / xi_k with c3 = 1 / sum 1 / xi_i.
inline std::vector<double> limit_allocation(LimitRegime regime, const std::vector<double> &xi, double c2 = 0.0)
{
    for (double x : xi)
        if (!(x > 0.0))
            throw ConfigError("limit allocations need strictly positive path losses");
    std::vector<double> mu(xi.size());
    if (regime == LimitRegime::pt_to_inf)
    {
        double s = 0.0;
        for (double x : xi)
            s += 1.0 / x;
        for (std::size_t k = 0; k < xi.size(); ++k)
            mu[k] = 1.0 / xi[k] / s;
        return mu;
    }
    if (!(c2 >= 0.0))
        throw ConfigError("c2 must be nonnegative");
    std::vector<double> ones(xi.size(), 1.0), floor(xi.size());
    for (std::size_t k = 0; k < xi.size(); ++k)
        floor[k] = c2 / xi[k];
    const double c1 = detail::water_level(ones, floor, 1.0);
    for (std::size_t k = 0; k < xi.size(); ++k)
        mu[k] = std::max(c1 - floor[k], 0.0);
    return mu;
}

inline std::vector<double> limit_allocation(LimitRegime regime, const std::vector<double> &xi, const PaConstants &c)
{
    double c2 = 0.0;
    for (std::size_t k = 0; k < c.K(); ++k)
        if (c.l[k] > 0.0)
        {
            c2 = c.n * xi[k] / c.l[k];
            break;
        }
    return limit_allocation(regime, xi, c2);
}

// Large-P_T constant c = pi eta P_r N_d / (4 sigma_d^2) of the two-user expansion.
inline double perturbation_constant(const SystemConfig &cfg)
{
    return std::numbers::pi * cfg.eta * cfg.p_r * double(cfg.bs_antennas) / (4.0 * cfg.sigma2_d);
}

// Two-user sum rate (natural log) after moving dmu of power from user 2 to user 1.
inline double perturbed_sum_rate_k2(double xi1, double xi2, double mu1, double mu2, double c, double dmu)
{
    const double a = xi1 * (mu1 + dmu), b = xi2 * (mu2 - dmu);
    return 0.5 * std::log1p(c * a / (a + b)) + 0.5 * std::log1p(c * b / (a + b));
}

// First-order coefficient b as printed for the two-user expansion.
inline double perturbation_coefficient_k2(double xi1, double xi2, double mu1, double mu2, double c)
{
    const double s = xi1 * mu1 + xi2 * mu2;
    const double top = c * c * xi1 * xi2 * (mu1 + mu2);
    return top / (s * (s + c * xi1 * mu1)) - top / (s * (s + c * xi2 * mu2));
}

// Exact derivative of perturbed_sum_rate_k2 at dmu = 0. It equals the printed b divided by 2c.
inline double sum_rate_slope_k2(double xi1, double xi2, double mu1, double mu2, double c)
{
    const double s = xi1 * mu1 + xi2 * mu2;
    const double top = c * xi1 * xi2 * (mu1 + mu2);
    return 0.5 * (top / (s * (s + c * xi1 * mu1)) - top / (s * (s + c * xi2 * mu2)));
}

} // namespace relaymimo::pa

#endif
