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

#include "xlas/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace xlas
{

SelectionMask::SelectionMask(arma::uvec b) : bits(std::move(b))
{
    if (bits.is_empty())
        throw std::invalid_argument("Selection mask cannot be empty.");
    for (arma::uword i = 0; i < bits.n_elem; ++i)
        if (bits(i) > 1)
            throw std::invalid_argument("Selection mask entries must be 0 or 1.");
    if (arma::accu(bits) == 0)
        throw std::invalid_argument("Selection mask must keep at least one antenna active.");
}

SelectionMask SelectionMask::all_on(arma::uword n)
{
    return SelectionMask(arma::uvec(n, arma::fill::ones));
}

PowerVector::PowerVector(arma::vec p, double budget) : powers(std::move(p)), p_tot(budget)
{
    if (budget <= 0.0)
        throw std::invalid_argument("Power budget must be positive.");
    if (powers.min() < 0.0)
        throw std::invalid_argument("Transmit powers cannot be negative.");
    // Tolerate round-off from the projected solvers.
    if (arma::accu(powers) > budget * (1.0 + 1e-9))
        throw std::invalid_argument("Transmit powers exceed the total budget.");
}

PowerVector PowerVector::equal_split(arma::uword k, double budget)
{
    return PowerVector(arma::vec(k, arma::fill::value(budget / static_cast<double>(k))), budget);
}

arma::cx_mat mrt_weights(const std::vector<ChannelVector> &channels)
{
    if (channels.empty())
        throw std::invalid_argument("Channel list cannot be empty.");

    const arma::uword n = channels.front().entries.n_elem;
    const double scale = std::sqrt(static_cast<double>(n));

    arma::cx_mat weights(n, channels.size());
    for (arma::uword k = 0; k < channels.size(); ++k)
    {
        if (channels[k].entries.n_elem != n)
            throw std::invalid_argument("All channels must share the array size.");
        weights.col(k) = scale * channels[k].los_steering;
    }
    return weights;
}

namespace
{

// Shared SINR/rate assembly. active(i) is M_i; coupling(k, i) holds
// |h_k^H V_i w_i|^2, i.e. the squared masked correlation before the power
// and 1/M scaling.
RateReport assemble_report(const arma::mat &coupling, const arma::vec &active, const PowerVector &powers,
                           double sigma2, const arma::vec &user_weights)
{
    const arma::uword k_users = coupling.n_rows;

    RateReport report;
    report.per_user_rate.set_size(k_users);
    report.per_user_sinr.set_size(k_users);
    report.interference.zeros(k_users, k_users);

    for (arma::uword k = 0; k < k_users; ++k)
    {
        const double signal = powers.powers(k) / active(k) * coupling(k, k);
        double interf = 0.0;
        for (arma::uword i = 0; i < k_users; ++i)
        {
            if (i == k)
                continue;
            const double term = powers.powers(i) / active(i) * coupling(k, i);
            report.interference(k, i) = term;
            interf += term;
        }
        const double sinr = signal / (interf + sigma2);
        report.per_user_sinr(k) = sinr;
        report.per_user_rate(k) = std::log2(1.0 + sinr);
    }

    report.sum_rate = arma::accu(report.per_user_rate);
    if (user_weights.is_empty())
        report.weighted_sum = report.sum_rate;
    else
        report.weighted_sum = arma::dot(user_weights, report.per_user_rate);
    return report;
}

void check_rate_inputs(const std::vector<ChannelVector> &channels, const arma::cx_mat &weights,
                       const PowerVector &powers, double sigma2, const arma::vec &user_weights)
{
    if (channels.empty())
        throw std::invalid_argument("Channel list cannot be empty.");
    if (weights.n_cols != channels.size())
        throw std::invalid_argument("One beamforming column per user is required.");
    if (weights.n_rows != channels.front().entries.n_elem)
        throw std::invalid_argument("Beamforming vectors must match the array size.");
    if (powers.powers.n_elem != channels.size())
        throw std::invalid_argument("One transmit power per user is required.");
    if (sigma2 <= 0.0)
        throw std::invalid_argument("Noise power must be positive.");
    if (!user_weights.is_empty() && user_weights.n_elem != channels.size())
        throw std::invalid_argument("One priority weight per user is required.");
}

} // namespace

RateReport rate_full_array(const std::vector<ChannelVector> &channels, const arma::cx_mat &weights,
                           const PowerVector &powers, double sigma2, const arma::vec &user_weights)
{
    check_rate_inputs(channels, weights, powers, sigma2, user_weights);

    const arma::uword k_users = channels.size();
    arma::mat coupling(k_users, k_users);
    for (arma::uword k = 0; k < k_users; ++k)
        for (arma::uword i = 0; i < k_users; ++i)
            coupling(k, i) = std::norm(arma::cdot(channels[k].entries, weights.col(i)));

    const arma::vec active(k_users, arma::fill::value(static_cast<double>(weights.n_rows)));
    return assemble_report(coupling, active, powers, sigma2, user_weights);
}

RateReport rate_with_selection(const std::vector<ChannelVector> &channels, const arma::cx_mat &weights,
                               const std::vector<SelectionMask> &masks, const PowerVector &powers, double sigma2,
                               const arma::vec &user_weights)
{
    check_rate_inputs(channels, weights, powers, sigma2, user_weights);
    if (masks.size() != channels.size())
        throw std::invalid_argument("One selection mask per user is required.");

    const arma::uword k_users = channels.size();
    const arma::uword n = weights.n_rows;

    arma::mat coupling(k_users, k_users);
    arma::vec active(k_users);
    for (arma::uword i = 0; i < k_users; ++i)
    {
        if (masks[i].size() != n)
            throw std::invalid_argument("Selection masks must match the array size.");
        active(i) = static_cast<double>(masks[i].active_count());

        // Masked beam of user i against every victim channel.
        for (arma::uword k = 0; k < k_users; ++k)
        {
            std::complex<double> sum = 0.0;
            for (arma::uword a = 0; a < n; ++a)
                if (masks[i].bits(a))
                    sum += std::conj(channels[k].entries(a)) * weights(a, i);
            coupling(k, i) = std::norm(sum);
        }
    }

    return assemble_report(coupling, active, powers, sigma2, user_weights);
}

CouplingReport interference_coupling(arma::uword k, const std::vector<ChannelVector> &channels,
                                     const arma::cx_mat &weights, const SelectionMask &mask_k)
{
    if (k >= channels.size())
        throw std::invalid_argument("User index out of range.");
    if (mask_k.size() != weights.n_rows)
        throw std::invalid_argument("Selection mask must match the array size.");

    const arma::uword n = weights.n_rows;
    const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(mask_k.active_count()));

    CouplingReport report;
    report.per_victim.set_size(channels.size() - 1);

    arma::uword slot = 0;
    for (arma::uword i = 0; i < channels.size(); ++i)
    {
        if (i == k)
            continue;
        std::complex<double> sum = 0.0;
        for (arma::uword a = 0; a < n; ++a)
            if (mask_k.bits(a))
                sum += std::conj(channels[i].entries(a)) * weights(a, k);
        report.per_victim(slot) = inv_sqrt_m * std::abs(sum);
        report.total += report.per_victim(slot);
        ++slot;
    }
    return report;
}

} // namespace xlas
