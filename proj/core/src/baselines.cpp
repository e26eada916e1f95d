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

#include "xlas/baselines.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>

#include "xlas/greedy.hpp"
#include "xlas/rng.hpp"

namespace xlas
{

Scenario make_scenario(std::vector<ChannelVector> channels, double noise_power, double budget,
                       const arma::vec &user_weights)
{
    if (channels.empty())
        throw std::invalid_argument("Channel list cannot be empty.");
    if (noise_power <= 0.0)
        throw std::invalid_argument("Noise power must be positive.");
    if (budget <= 0.0)
        throw std::invalid_argument("Power budget must be positive.");
    if (!user_weights.is_empty() && user_weights.n_elem != channels.size())
        throw std::invalid_argument("One priority weight per user is required.");

    Scenario scenario;
    scenario.weights = mrt_weights(channels);
    scenario.channels = std::move(channels);
    scenario.noise_power = noise_power;
    scenario.budget = budget;
    scenario.user_weights =
        user_weights.is_empty() ? arma::vec(scenario.channels.size(), arma::fill::ones) : user_weights;
    return scenario;
}

namespace
{

// Effective link gains G(k, i) = |h_k^H V_i w_i|^2 / M_i for fixed masks.
arma::mat scenario_gains(const Scenario &scenario, const std::vector<SelectionMask> &masks)
{
    const arma::uword k_users = scenario.num_users();
    const arma::uword n = scenario.num_antennas();

    arma::mat gains(k_users, k_users);
    for (arma::uword i = 0; i < k_users; ++i)
    {
        for (arma::uword k = 0; k < k_users; ++k)
        {
            std::complex<double> sum = 0.0;
            for (arma::uword a = 0; a < n; ++a)
                if (masks[i].bits(a))
                    sum += std::conj(scenario.channels[k].entries(a)) * scenario.weights(a, i);
            gains(k, i) = std::norm(sum) / static_cast<double>(masks[i].active_count());
        }
    }
    return gains;
}

} // namespace

SchemeResult evaluate_selection(const Scenario &scenario, std::string scheme_name, std::vector<SelectionMask> masks,
                                const PowerSolverConfig &power_config)
{
    if (masks.size() != scenario.num_users())
        throw std::invalid_argument("One selection mask per user is required.");

    const arma::mat gains = scenario_gains(scenario, masks);
    PowerAllocation alloc =
        sca_power_alloc(gains, scenario.noise_power, scenario.budget, scenario.user_weights, power_config);

    SchemeResult result;
    result.scheme = std::move(scheme_name);
    result.masks = std::move(masks);
    result.powers = alloc.powers;
    result.report = rate_with_selection(scenario.channels, scenario.weights, result.masks,
                                        PowerVector(alloc.powers, scenario.budget), scenario.noise_power,
                                        scenario.user_weights);
    return result;
}

SchemeResult full_array_baseline(const Scenario &scenario, const PowerSolverConfig &power_config)
{
    std::vector<SelectionMask> masks(scenario.num_users(), SelectionMask::all_on(scenario.num_antennas()));
    return evaluate_selection(scenario, "full_array", std::move(masks), power_config);
}

SchemeResult random_as_baseline(const Scenario &scenario, std::size_t trials, std::uint64_t seed,
                                const PowerSolverConfig &power_config, bool include_full)
{
    if (trials < 1)
        throw std::invalid_argument("At least one random trial is required.");

    const arma::uword k_users = scenario.num_users();
    const arma::uword n = scenario.num_antennas();

    Rng rng(seed);
    SchemeResult best;
    best.report.weighted_sum = -arma::datum::inf;

    if (include_full)
    {
        best = full_array_baseline(scenario, power_config);
        best.scheme = "random_as";
    }

    for (std::size_t t = 0; t < trials; ++t)
    {
        std::vector<SelectionMask> masks;
        masks.reserve(k_users);
        for (arma::uword k = 0; k < k_users; ++k)
        {
            // Uniform over nonempty subsets: redraw the rare all-zero row.
            arma::uvec bits(n);
            do
            {
                for (arma::uword a = 0; a < n; ++a)
                    bits(a) = rng.uniform() < 0.5 ? 1 : 0;
            } while (arma::accu(bits) == 0);
            masks.emplace_back(bits);
        }

        SchemeResult trial = evaluate_selection(scenario, "random_as", std::move(masks), power_config);
        if (trial.report.weighted_sum > best.report.weighted_sum)
            best = std::move(trial);
    }
    return best;
}

SchemeResult common_as_baseline(const Scenario &scenario, const PowerSolverConfig &power_config)
{
    const arma::uword k_users = scenario.num_users();
    const arma::uword n = scenario.num_antennas();

    // Contributions of every ordered (beam, victim) pair; the shared mask is
    // deactivated greedily on their aggregate residual.
    std::vector<arma::cx_vec> pair_z;
    std::vector<std::complex<double>> pair_sum;
    for (arma::uword k = 0; k < k_users; ++k)
    {
        for (arma::uword i = 0; i < k_users; ++i)
        {
            if (i == k)
                continue;
            arma::cx_vec z = arma::conj(scenario.channels[i].entries) % scenario.weights.col(k);
            pair_sum.push_back(arma::accu(z));
            pair_z.push_back(std::move(z));
        }
    }

    std::vector<char> active(n, 1);
    std::vector<arma::uword> order;
    std::vector<double> trajectory;

    for (arma::uword removed = 0;; ++removed)
    {
        double aggregate = 0.0;
        for (const auto &s : pair_sum)
            aggregate += std::abs(s);
        trajectory.push_back(aggregate / std::sqrt(static_cast<double>(n - removed)));

        if (n - removed == 1)
            break;

        double best_val = 0.0;
        arma::uword best = n;
        for (arma::uword a = 0; a < n; ++a)
        {
            if (!active[a])
                continue;
            double val = 0.0;
            for (std::size_t p = 0; p < pair_z.size(); ++p)
                val += std::abs(pair_sum[p] - pair_z[p](a));
            if (best == n || val < best_val)
            {
                best = a;
                best_val = val;
            }
        }

        active[best] = 0;
        for (std::size_t p = 0; p < pair_z.size(); ++p)
            pair_sum[p] -= pair_z[p](best);
        order.push_back(best);
    }

    std::size_t chosen = 0;
    for (std::size_t j = 1; j < trajectory.size(); ++j)
        if (trajectory[j] < trajectory[chosen])
            chosen = j;

    arma::uvec bits(n, arma::fill::ones);
    for (std::size_t j = 0; j < chosen; ++j)
        bits(order[j]) = 0;

    std::vector<SelectionMask> masks(k_users, SelectionMask(bits));
    SchemeResult result = evaluate_selection(scenario, "common_as", std::move(masks), power_config);

    // Minimal coupling does not imply maximal rate; the full shared subset is
    // always a candidate, so the scheme never loses to the full array.
    if (chosen > 0)
    {
        SchemeResult full = full_array_baseline(scenario, power_config);
        if (full.report.weighted_sum > result.report.weighted_sum)
        {
            full.scheme = "common_as";
            return full;
        }
    }
    return result;
}

SchemeResult subarray_baseline(const Scenario &scenario, std::size_t num_subarrays,
                               const PowerSolverConfig &power_config)
{
    const arma::uword k_users = scenario.num_users();
    const arma::uword n = scenario.num_antennas();
    if (num_subarrays < 1 || num_subarrays > n)
        throw std::invalid_argument("Subarray count must lie in [1, N].");
    if (k_users > num_subarrays)
        throw std::invalid_argument("More users than subarrays: no one-subarray-per-user assignment exists.");
    if (k_users > 6)
        throw std::invalid_argument("Exhaustive subarray assignment is limited to six users.");

    // Contiguous equal blocks, remainder absorbed by the last.
    const arma::uword base = n / num_subarrays;
    std::vector<SelectionMask> blocks;
    for (std::size_t u = 0; u < num_subarrays; ++u)
    {
        const arma::uword lo = u * base;
        const arma::uword hi = (u + 1 == num_subarrays) ? n : lo + base;
        arma::uvec bits(n, arma::fill::zeros);
        bits.subvec(lo, hi - 1).fill(1);
        blocks.emplace_back(std::move(bits));
    }

    // Exhaustive injective assignment users -> blocks.
    std::vector<std::size_t> assignment(k_users, 0);
    std::vector<char> used(num_subarrays, 0);
    SchemeResult best;
    best.report.weighted_sum = -arma::datum::inf;

    auto recurse = [&](auto &&self, std::size_t user) -> void {
        if (user == k_users)
        {
            std::vector<SelectionMask> masks;
            masks.reserve(k_users);
            for (std::size_t k = 0; k < k_users; ++k)
                masks.push_back(blocks[assignment[k]]);
            SchemeResult candidate = evaluate_selection(scenario, "subarray", std::move(masks), power_config);
            if (candidate.report.weighted_sum > best.report.weighted_sum)
                best = std::move(candidate);
            return;
        }
        for (std::size_t u = 0; u < num_subarrays; ++u)
        {
            if (used[u])
                continue;
            used[u] = 1;
            assignment[user] = u;
            self(self, user + 1);
            used[u] = 0;
        }
    };
    recurse(recurse, 0);
    return best;
}

SchemeResult greedy_selection_scheme(const Scenario &scenario, std::size_t min_active,
                                     const PowerSolverConfig &power_config)
{
    if (scenario.num_users() == 1)
        return evaluate_selection(scenario, "greedy",
                                  {SelectionMask::all_on(scenario.num_antennas())}, power_config);

    std::vector<SelectionMask> masks;
    masks.reserve(scenario.num_users());
    for (std::size_t k = 0; k < scenario.num_users(); ++k)
        masks.push_back(greedy_deactivate_multi_user(k, scenario.channels, scenario.weights, min_active).mask);
    return evaluate_selection(scenario, "greedy", std::move(masks), power_config);
}

SchemeResult pdd_scheme(const Scenario &scenario, const PddConfig &config, bool multistart)
{
    const PddProblem problem = make_pdd_problem(scenario.channels, scenario.weights, scenario.noise_power,
                                                scenario.budget, scenario.user_weights);

    PddResult solved;
    if (multistart && scenario.num_users() >= 2)
    {
        std::vector<SelectionMask> warm;
        warm.reserve(scenario.num_users());
        for (std::size_t k = 0; k < scenario.num_users(); ++k)
            warm.push_back(
                greedy_deactivate_multi_user(k, scenario.channels, scenario.weights, config.min_active).mask);
        solved = pdd_multistart(problem, config, warm);
    }
    else
    {
        solved = pdd_solve(problem, config);
    }

    SchemeResult result;
    result.scheme = "pdd";
    result.masks = solved.masks;
    result.powers = solved.powers;
    result.report = rate_with_selection(scenario.channels, scenario.weights, result.masks,
                                        PowerVector(solved.powers, scenario.budget), scenario.noise_power,
                                        scenario.user_weights);
    return result;
}

SchemeResult pdd_equal_power_baseline(const Scenario &scenario, const PddConfig &config)
{
    PddConfig frozen = config;
    frozen.update_powers = false;

    const PddProblem problem = make_pdd_problem(scenario.channels, scenario.weights, scenario.noise_power,
                                                scenario.budget, scenario.user_weights);
    PddResult solved = pdd_solve(problem, frozen);

    SchemeResult result;
    result.scheme = "pdd_equal_power";
    result.masks = solved.masks;
    result.powers = solved.powers;
    result.report = rate_with_selection(scenario.channels, scenario.weights, result.masks,
                                        PowerVector(solved.powers, scenario.budget), scenario.noise_power,
                                        scenario.user_weights);
    return result;
}

SchemeResult exhaustive_oracle(const Scenario &scenario, std::size_t max_antennas,
                               const PowerSolverConfig &power_config)
{
    const std::size_t k_users = scenario.num_users();
    const arma::uword n = scenario.num_antennas();
    if (n > max_antennas)
        throw std::invalid_argument("Array too large for exhaustive enumeration.");
    if (k_users > 3)
        throw std::invalid_argument("Exhaustive enumeration is limited to three users.");
    if (max_antennas > 20)
        throw std::invalid_argument("Exhaustive enumeration cap above 20 antennas is not supported.");

    const std::uint32_t n_masks = 1u << n;

    // Per-pair gains for every mask via the subset-sum recurrence
    // S[m] = S[m without lowest bit] + z[lowest bit].
    std::vector<std::vector<double>> gain(k_users * k_users);
    {
        std::vector<std::complex<double>> sums(n_masks);
        for (std::size_t k = 0; k < k_users; ++k)
        {
            for (std::size_t i = 0; i < k_users; ++i)
            {
                arma::cx_vec z = arma::conj(scenario.channels[k].entries) % scenario.weights.col(i);
                sums[0] = 0.0;
                auto &table = gain[k * k_users + i];
                table.assign(n_masks, 0.0);
                for (std::uint32_t m = 1; m < n_masks; ++m)
                {
                    const std::uint32_t low = m & (~m + 1u);
                    sums[m] = sums[m ^ low] + z(std::countr_zero(low));
                    table[m] = std::norm(sums[m]) / static_cast<double>(std::popcount(m));
                }
            }
        }
    }

    // A user's mask enters the rate expression only through its own
    // beamforming gain and the leakage gains it induces at the other users.
    // For any fixed power split, every rate is nondecreasing in the own
    // gain and nonincreasing in each leakage, and the power feasible set
    // does not depend on the masks — so a mask dominated componentwise in
    // (own gain, leakages) by another can never be part of an optimum.
    // Only the Pareto frontier of each user's 2^N - 1 masks is enumerated,
    // which collapses the joint search space by orders of magnitude.
    std::vector<std::vector<std::uint32_t>> front(k_users);
    for (std::size_t k = 0; k < k_users; ++k)
    {
        const auto &own = gain[k * k_users + k];
        std::vector<const std::vector<double> *> leak;
        for (std::size_t j = 0; j < k_users; ++j)
            if (j != k)
                leak.push_back(&gain[j * k_users + k]);

        std::vector<std::uint32_t> sorted(n_masks - 1);
        std::iota(sorted.begin(), sorted.end(), 1u);
        std::sort(sorted.begin(), sorted.end(), [&](std::uint32_t a, std::uint32_t b) {
            if (own[a] != own[b])
                return own[a] > own[b];
            for (const auto *l : leak)
                if ((*l)[a] != (*l)[b])
                    return (*l)[a] < (*l)[b];
            return a < b;
        });

        // Sweep in decreasing own-gain order: every kept entry already has
        // own gain >= the candidate's, so the candidate survives only if it
        // strictly improves some leakage against each of them.  Exact ties
        // keep the lowest mask.
        std::vector<double> kept_leaks;
        for (std::uint32_t m : sorted)
        {
            bool dominated = false;
            for (std::size_t e = 0; e < front[k].size() && !dominated; ++e)
            {
                bool all_le = true;
                for (std::size_t t = 0; t < leak.size() && all_le; ++t)
                    all_le = kept_leaks[e * leak.size() + t] <= (*leak[t])[m];
                dominated = all_le;
            }
            if (dominated)
                continue;
            front[k].push_back(m);
            for (const auto *l : leak)
                kept_leaks.push_back((*l)[m]);
        }
    }

    // Interference-free bound per user and mask: the bound of a joint
    // assignment separates into a sum of these, which drives the pruning.
    // The frontier is already sorted by own gain, hence by bound.
    std::vector<std::vector<double>> bound(k_users);
    for (std::size_t k = 0; k < k_users; ++k)
    {
        bound[k].resize(n_masks, 0.0);
        for (std::uint32_t m : front[k])
            bound[k][m] = scenario.user_weights(k) *
                          std::log2(1.0 + scenario.budget * gain[k * k_users + k][m] / scenario.noise_power);
    }

    std::vector<double> tail_best(k_users + 1, 0.0);
    for (std::size_t k = k_users; k-- > 0;)
        tail_best[k] = tail_best[k + 1] + bound[k][front[k].front()];

    const auto score = [&](const std::vector<std::uint32_t> &choice) {
        arma::mat gains(k_users, k_users);
        for (std::size_t k = 0; k < k_users; ++k)
            for (std::size_t i = 0; i < k_users; ++i)
                gains(k, i) = gain[k * k_users + i][choice[i]];
        return sca_power_alloc(gains, scenario.noise_power, scenario.budget, scenario.user_weights, power_config)
            .weighted_sum_rate;
    };
    const auto to_masks = [&](const std::vector<std::uint32_t> &choice) {
        std::vector<SelectionMask> masks;
        masks.reserve(k_users);
        for (std::size_t k = 0; k < k_users; ++k)
        {
            arma::uvec bits(n, arma::fill::zeros);
            for (arma::uword a = 0; a < n; ++a)
                if (choice[k] & (1u << a))
                    bits(a) = 1;
            masks.emplace_back(std::move(bits));
        }
        return masks;
    };

    // Seed the incumbent with the full-array assignment — and, when it
    // applies, the greedy selection — so pruning has traction immediately.
    // Warm starts only tighten the search; the enumeration stays exhaustive.
    std::vector<std::uint32_t> choice(k_users, n_masks - 1);
    std::vector<std::uint32_t> best_choice = choice;
    double incumbent = score(choice);
    if (k_users >= 2)
    {
        std::vector<std::uint32_t> warm(k_users, 0);
        for (std::size_t k = 0; k < k_users; ++k)
        {
            const SelectionMask mask =
                greedy_deactivate_multi_user(k, scenario.channels, scenario.weights).mask;
            for (arma::uword a = 0; a < n; ++a)
                if (mask.bits(a))
                    warm[k] |= 1u << a;
        }
        const double warm_score = score(warm);
        if (warm_score > incumbent)
        {
            incumbent = warm_score;
            best_choice = warm;
        }
    }

    // Depth-first over users, frontier masks in decreasing bound order; a
    // level whose optimistic completion cannot beat the incumbent cuts its
    // whole branch, and the sort makes every later mask prunable too.
    auto dfs = [&](auto &&self, std::size_t user, double prefix) -> void {
        if (user == k_users)
        {
            const double exact = score(choice);
            if (exact > incumbent)
            {
                incumbent = exact;
                best_choice = choice;
            }
            return;
        }
        for (std::uint32_t m : front[user])
        {
            const double optimistic = prefix + bound[user][m] + tail_best[user + 1];
            if (optimistic <= incumbent)
                break;
            choice[user] = m;
            self(self, user + 1, prefix + bound[user][m]);
        }
    };
    dfs(dfs, 0, 0.0);

    return evaluate_selection(scenario, "oracle", to_masks(best_choice), power_config);
}

} // namespace xlas
