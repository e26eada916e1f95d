// xlas — antenna selection and beamforming for mixed near/far-field XL-array downlink
// Copyright (C) 2026 xlas contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "xlas/greedy.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "xlas/common.hpp"

namespace xlas
{

arma::cx_vec correlation_contributions(const arma::cx_vec &victim_steering, const arma::cx_vec &weights)
{
    if (victim_steering.n_elem != weights.n_elem)
        throw std::invalid_argument("Victim vector and beam must have the same length.");
    return arma::conj(victim_steering) % weights;
}

std::size_t DeactivationTrajectory::active_after(std::size_t n, std::size_t j) const
{
    if (j >= n)
        throw std::invalid_argument("Removal count must be below the array size.");
    return n - j;
}

namespace
{

// Phase distance folded into [0, pi]: contributions cancel the residual
// equally well at phase x and x + pi, so alignment is measured modulo pi
// on the absolute gap.
double wrapped_phase_gap(double a, double b)
{
    double d = std::fabs(a - b);
    d = std::fmod(d, 2.0 * constants::pi);
    if (d > constants::pi)
        d = 2.0 * constants::pi - d;
    return d;
}

} // namespace

DeactivationTrajectory greedy_deactivate_two_user(const arma::cx_vec &contributions, std::size_t target_active)
{
    const std::size_t n = contributions.n_elem;
    if (n == 0)
        throw std::invalid_argument("Contribution vector cannot be empty.");
    if (target_active < 1 || target_active > n)
        throw std::invalid_argument("Target active count must lie in [1, N].");

    std::vector<char> active(n, 1);
    std::complex<double> s = arma::accu(contributions);

    DeactivationTrajectory traj;
    traj.coupling.push_back(std::abs(s) / std::sqrt(static_cast<double>(n)));

    for (std::size_t step = 1; step + target_active <= n; ++step)
    {
        // Quasi-in-phase rule: the removal canceling the most per antenna is
        // the one whose contribution is best phase-aligned with the residual.
        const double phase_s = std::arg(s);
        double best_gap = 0.0, best_dist = 0.0;
        std::size_t best = n;
        for (std::size_t a = 0; a < n; ++a)
        {
            if (!active[a])
                continue;
            const double gap = wrapped_phase_gap(phase_s, std::arg(contributions(a)));
            const double dist = std::abs(s - contributions(a));
            if (best == n || gap < best_gap || (gap == best_gap && dist < best_dist))
            {
                best = a;
                best_gap = gap;
                best_dist = dist;
            }
        }

        active[best] = 0;
        s -= contributions(best);
        traj.order.push_back(best);
        traj.coupling.push_back(std::abs(s) / std::sqrt(static_cast<double>(n - step)));
    }
    return traj;
}

double aligned_removal_reduction(std::size_t n_antennas, std::size_t removals_done, double phase_gap)
{
    if (removals_done >= n_antennas)
        throw std::invalid_argument("Removal count must be below the array size.");
    return std::cos(phase_gap) / std::sqrt(static_cast<double>(n_antennas - removals_done));
}

DecayFit fit_linear_decay(const std::vector<double> &coupling, double floor_fraction)
{
    if (coupling.size() < 2)
        throw std::invalid_argument("Trajectory too short to fit.");
    if (floor_fraction <= 0.0 || floor_fraction > 1.0)
        throw std::invalid_argument("Floor fraction must lie in (0, 1].");

    double peak = 0.0;
    for (double c : coupling)
        peak = std::max(peak, std::fabs(c));
    if (peak == 0.0)
        throw std::invalid_argument("No decay to fit: trajectory is constant zero.");

    // The linear regime ends where the coupling hits the floor or starts
    // rising again toward the 1/sqrt(M) blow-up, whichever comes first.
    const double floor_value = floor_fraction * coupling.front();
    std::size_t first_below = coupling.size();
    std::size_t arg_min = 0;
    for (std::size_t j = 0; j < coupling.size(); ++j)
    {
        if (first_below == coupling.size() && coupling[j] < floor_value)
            first_below = j;
        if (coupling[j] < coupling[arg_min])
            arg_min = j;
    }
    std::size_t last = std::min(first_below, arg_min + 1);
    if (last < 2)
        last = 2;

    // Least squares of coupling[j] ~ intercept - slope * j over [0, last).
    const double m = static_cast<double>(last);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t j = 0; j < last; ++j)
    {
        const double x = static_cast<double>(j);
        sx += x;
        sy += coupling[j];
        sxx += x * x;
        sxy += x * coupling[j];
    }
    const double denom = m * sxx - sx * sx;
    const double raw_slope = (m * sxy - sx * sy) / denom;

    DecayFit fit;
    fit.slope = -raw_slope;
    fit.intercept = (sy - raw_slope * sx) / m;
    fit.first = 0;
    fit.last = last;

    double sse = 0.0;
    for (std::size_t j = 0; j < last; ++j)
    {
        const double r = coupling[j] - (fit.intercept - fit.slope * static_cast<double>(j));
        sse += r * r;
    }
    fit.residual_rmse = std::sqrt(sse / m);
    return fit;
}

namespace
{

std::size_t clamp_count(double raw, std::size_t n)
{
    if (!(raw > 0.0))
        return 0;
    const double floored = std::floor(raw);
    const double cap = static_cast<double>(n - 1);
    return static_cast<std::size_t>(std::min(floored, cap));
}

} // namespace

RemovalCounts closed_form_removal_counts(std::size_t n_antennas, double i0_1, double alpha_1, double i0_2,
                                         double alpha_2, double p1, double p2, double gain2_sq, double gain1_sq,
                                         double noise_power)
{
    const double n = static_cast<double>(n_antennas);

    // Stationary point of each user's rate proxy under the linearized decay;
    // the radical is the residual interference-plus-noise balance.
    const double root1 = n - i0_1 / alpha_1;
    const double raw1 = n - std::sqrt(root1 * root1 + noise_power / (alpha_1 * alpha_1 * gain2_sq * p1));
    const double root2 = n - i0_2 / alpha_2;
    const double raw2 = n - std::sqrt(root2 * root2 + noise_power / (alpha_2 * alpha_2 * gain1_sq * p2));

    RemovalCounts counts;
    counts.user1 = clamp_count(raw1, n_antennas);
    counts.user2 = clamp_count(raw2, n_antennas);
    return counts;
}

MultiUserSelection greedy_deactivate_multi_user(std::size_t k, const std::vector<ChannelVector> &channels,
                                                const arma::cx_mat &weights, std::size_t min_active)
{
    const std::size_t k_users = channels.size();
    if (k_users < 2)
        throw std::invalid_argument("Multi-user selection needs at least two users.");
    if (k >= k_users)
        throw std::invalid_argument("User index out of range.");

    const arma::uword n = weights.n_rows;
    if (min_active < 1 || min_active > n)
        throw std::invalid_argument("Minimum active count must lie in [1, N].");

    // Per-victim correlation contributions of user k's beam.
    arma::cx_mat z(k_users, n, arma::fill::zeros);
    arma::cx_vec sums(k_users, arma::fill::zeros);
    for (std::size_t i = 0; i < k_users; ++i)
    {
        if (i == k)
            continue;
        for (arma::uword a = 0; a < n; ++a)
            z(i, a) = std::conj(channels[i].entries(a)) * weights(a, k);
        sums(i) = arma::accu(z.row(i));
    }

    MultiUserSelection sel;
    std::vector<char> active(n, 1);

    for (arma::uword removed = 0;; ++removed)
    {
        const double m = static_cast<double>(n - removed);
        double aggregate = 0.0;
        for (std::size_t i = 0; i < k_users; ++i)
            if (i != k)
                aggregate += std::abs(sums(i));
        sel.aggregate_coupling.push_back(aggregate / std::sqrt(m));

        if (n - removed == min_active)
            break;

        // Exact post-removal criterion: the antenna whose removal leaves the
        // smallest summed residual magnitude across victims.
        double best_val = 0.0;
        arma::uword best = n;
        for (arma::uword a = 0; a < n; ++a)
        {
            if (!active[a])
                continue;
            double val = 0.0;
            for (std::size_t i = 0; i < k_users; ++i)
                if (i != k)
                    val += std::abs(sums(i) - z(i, a));
            if (best == n || val < best_val)
            {
                best = a;
                best_val = val;
            }
        }

        active[best] = 0;
        for (std::size_t i = 0; i < k_users; ++i)
            if (i != k)
                sums(i) -= z(i, best);
        sel.removal_order.push_back(best);
    }

    // Keep the cardinality with the least aggregate coupling (first
    // occurrence), then rebuild its mask from the removal prefix.
    std::size_t chosen = 0;
    for (std::size_t j = 1; j < sel.aggregate_coupling.size(); ++j)
        if (sel.aggregate_coupling[j] < sel.aggregate_coupling[chosen])
            chosen = j;
    sel.chosen_removals = chosen;

    arma::uvec bits(n, arma::fill::ones);
    for (std::size_t j = 0; j < chosen; ++j)
        bits(sel.removal_order[j]) = 0;
    sel.mask = SelectionMask(std::move(bits));
    return sel;
}

} // namespace xlas
