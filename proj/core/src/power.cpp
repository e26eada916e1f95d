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

#include "xlas/power.hpp"

#include <cmath>
#include <stdexcept>

namespace xlas
{

namespace
{

constexpr double log2_e = 1.4426950408889634074;

void check_gains(const arma::mat &gains, double noise_power, const arma::vec &user_weights)
{
    if (gains.n_rows != gains.n_cols || gains.n_rows == 0)
        throw std::invalid_argument("Gain matrix must be square and nonempty.");
    if (gains.min() < 0.0)
        throw std::invalid_argument("Link gains cannot be negative.");
    if (noise_power <= 0.0)
        throw std::invalid_argument("Noise power must be positive.");
    if (user_weights.n_elem != gains.n_rows)
        throw std::invalid_argument("One priority weight per user is required.");
}

} // namespace

arma::vec project_power(const arma::vec &p, double budget)
{
    if (budget <= 0.0)
        throw std::invalid_argument("Power budget must be positive.");

    arma::vec clamped = arma::clamp(p, 0.0, arma::datum::inf);
    if (arma::accu(clamped) <= budget)
        return clamped;

    // Over budget: project onto the simplex {p >= 0, sum p = budget}.
    const arma::vec u = arma::sort(p, "descend");
    const arma::vec css = arma::cumsum(u);
    arma::uword rho = 0;
    for (arma::uword i = 0; i < u.n_elem; ++i)
        if (u(i) * static_cast<double>(i + 1) > css(i) - budget)
            rho = i;
    const double tau = (css(rho) - budget) / static_cast<double>(rho + 1);
    return arma::clamp(p - tau, 0.0, arma::datum::inf);
}

double weighted_sum_rate(const arma::mat &gains, const arma::vec &powers, double noise_power,
                         const arma::vec &user_weights)
{
    check_gains(gains, noise_power, user_weights);

    double total = 0.0;
    for (arma::uword k = 0; k < gains.n_rows; ++k)
    {
        // Accumulate the interference floor directly instead of subtracting
        // the signal from the total: with noise floors ten orders below the
        // received power the subtraction cancels catastrophically.
        double interference = noise_power;
        for (arma::uword i = 0; i < gains.n_cols; ++i)
            if (i != k)
                interference += gains(k, i) * powers(i);
        const double received = interference + gains(k, k) * powers(k);
        total += user_weights(k) * std::log2(received / interference);
    }
    return total;
}

PowerSearchResult two_user_power_search(const arma::mat &gains, double noise_power, double budget,
                                        const arma::vec &user_weights, const PowerSolverConfig &config)
{
    check_gains(gains, noise_power, user_weights);
    if (gains.n_rows != 2)
        throw std::invalid_argument("Grid search is defined for exactly two users.");
    if (config.grid_points < 2)
        throw std::invalid_argument("Grid must have at least two points.");

    PowerSearchResult result;
    result.powers.set_size(2);
    result.weighted_sum_rate = -arma::datum::inf;

    arma::vec p(2);
    for (std::size_t j = 0; j < config.grid_points; ++j)
    {
        p(0) = budget * static_cast<double>(j) / static_cast<double>(config.grid_points - 1);
        p(1) = budget - p(0);
        const double rate = weighted_sum_rate(gains, p, noise_power, user_weights);
        if (rate > result.weighted_sum_rate)
        {
            result.weighted_sum_rate = rate;
            result.powers = p;
        }
    }
    return result;
}

double power_alloc_surrogate(const arma::mat &gains, double noise_power, const arma::vec &user_weights,
                             const arma::vec &anchor, const arma::vec &powers, arma::vec *grad)
{
    const arma::uword k_users = gains.n_rows;
    if (grad)
        grad->zeros(k_users);

    // Interference at the anchor, where the log is linearized.
    arma::vec interf0(k_users);
    for (arma::uword k = 0; k < k_users; ++k)
        interf0(k) = arma::dot(gains.row(k), anchor) - gains(k, k) * anchor(k);

    double value = 0.0;
    for (arma::uword k = 0; k < k_users; ++k)
    {
        const double received = arma::dot(gains.row(k), powers) + noise_power;
        const double interf = received - noise_power - gains(k, k) * powers(k);
        const double tangent = log2_e / (interf0(k) + noise_power);
        value += user_weights(k) *
                 (std::log2(received) - (std::log2(interf0(k) + noise_power) + tangent * (interf - interf0(k))));
        if (grad)
        {
            for (arma::uword i = 0; i < k_users; ++i)
            {
                (*grad)(i) += user_weights(k) * log2_e / received * gains(k, i);
                if (i != k)
                    (*grad)(i) -= user_weights(k) * tangent * gains(k, i);
            }
        }
    }
    return value;
}

PowerAllocation sca_power_alloc(const arma::mat &gains, double noise_power, double budget,
                                const arma::vec &user_weights, const PowerSolverConfig &config)
{
    check_gains(gains, noise_power, user_weights);
    if (budget <= 0.0)
        throw std::invalid_argument("Power budget must be positive.");

    const arma::uword k_users = gains.n_rows;
    arma::vec p(k_users, arma::fill::value(budget / static_cast<double>(k_users)));

    PowerAllocation result;
    double prev = -arma::datum::inf;
    double step = budget; // shared across rounds so the line search warm-starts

    for (std::size_t round = 0; round < config.sca_max_rounds; ++round)
    {
        const arma::vec anchor = p;
        arma::vec grad;
        double cur = power_alloc_surrogate(gains, noise_power, user_weights, anchor, p, &grad);

        // A few projected-gradient steps on this round's surrogate.
        for (std::size_t it = 0; it < config.pg_steps; ++it)
        {
            arma::vec p_next, grad_next;
            double val_next = -arma::datum::inf;
            while (step > 1e-16 * budget)
            {
                p_next = project_power(p + step * grad, budget);
                val_next = power_alloc_surrogate(gains, noise_power, user_weights, anchor, p_next, &grad_next);
                if (val_next > cur - 1e-15)
                    break;
                step *= 0.5;
            }
            if (step <= 1e-16 * budget || val_next <= cur + 1e-16)
                break;
            p = p_next;
            cur = val_next;
            grad = grad_next;
            step *= 2.0;
        }

        const double rate = weighted_sum_rate(gains, p, noise_power, user_weights);
        result.objective_trace.push_back(rate);
        if (std::fabs(rate - prev) < config.sca_tol * std::max(1.0, std::fabs(prev)))
            break;
        prev = rate;
    }

    result.powers = p;
    result.weighted_sum_rate = weighted_sum_rate(gains, p, noise_power, user_weights);
    return result;
}

} // namespace xlas
