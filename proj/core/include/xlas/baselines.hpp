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

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <armadillo>

#include "xlas/channel.hpp"
#include "xlas/metrics.hpp"
#include "xlas/pdd.hpp"
#include "xlas/power.hpp"

namespace xlas
{

// A fully realized problem instance: channels, MRT beams, noise, budget and
// per-user priority weights. All selection schemes consume this one bundle
// so paired comparisons see identical channels.
struct Scenario
{
    std::vector<ChannelVector> channels;
    arma::cx_mat weights; // MRT beam per user, one column each
    double noise_power = 0.0;
    double budget = 0.0;
    arma::vec user_weights;

    std::size_t num_users() const { return channels.size(); }
    std::size_t num_antennas() const { return weights.n_rows; }
};

Scenario make_scenario(std::vector<ChannelVector> channels, double noise_power, double budget,
                       const arma::vec &user_weights = {});

// Common result shape for every scheme: the chosen masks, the optimized
// powers and the resulting rates on the true channels.
struct SchemeResult
{
    std::string scheme;
    std::vector<SelectionMask> masks;
    arma::vec powers;
    RateReport report;
};

// Optimizes powers for fixed masks via sca_power_alloc and assembles the
// report; shared tail of every scheme below.
SchemeResult evaluate_selection(const Scenario &scenario, std::string scheme_name,
                                std::vector<SelectionMask> masks, const PowerSolverConfig &power_config = {});

// All antennas active for every user; power allocation optimized.
SchemeResult full_array_baseline(const Scenario &scenario, const PowerSolverConfig &power_config = {});

// Best of `trials` independent draws, each user's mask uniform over nonempty
// subsets (empty draws are rejected and redrawn); every trial's powers are
// fully optimized. Deterministic under the seed. `include_full` adds the
// full-array masks as an extra candidate, making the result dominate the
// full-array baseline by construction.
SchemeResult random_as_baseline(const Scenario &scenario, std::size_t trials, std::uint64_t seed,
                                const PowerSolverConfig &power_config = {}, bool include_full = false);

// One mask shared by all users, chosen by greedy deactivation on the
// aggregate coupling (summed over all ordered user pairs), keeping the
// cardinality with the least aggregate along the trajectory; the full subset
// stays in the candidate set, so the result never falls below full-array.
SchemeResult common_as_baseline(const Scenario &scenario, const PowerSolverConfig &power_config = {});

// The array is split into `num_subarrays` contiguous blocks of equal size
// (remainder absorbed by the last); each user is assigned a distinct block
// by exhaustive injective assignment. Rejects more users than blocks.
SchemeResult subarray_baseline(const Scenario &scenario, std::size_t num_subarrays,
                               const PowerSolverConfig &power_config = {});

// Proposed low-complexity scheme: per-user multi-user greedy deactivation
// followed by power optimization.
SchemeResult greedy_selection_scheme(const Scenario &scenario, std::size_t min_active = 1,
                                     const PowerSolverConfig &power_config = {});

// Proposed optimization-based scheme: PDD with multistart (all-ones start
// plus a warm start from the greedy masks), binarized, powers re-optimized.
// Set multistart = false for the bare all-ones run.
SchemeResult pdd_scheme(const Scenario &scenario, const PddConfig &config = {}, bool multistart = true);

// PDD ablation with the power block frozen at an equal split (selection
// optimized, powers not).
SchemeResult pdd_equal_power_baseline(const Scenario &scenario, const PddConfig &config = {});

// Globally optimal selection over all joint mask combinations, exact via
// branch-and-prune: the interference-free rate bound is separable across
// users, so whole subtrees whose bound cannot beat the incumbent are
// skipped; surviving leaves get full power optimization. Rejects
// N > max_antennas (default 12) or K > 3.
SchemeResult exhaustive_oracle(const Scenario &scenario, std::size_t max_antennas = 12,
                               const PowerSolverConfig &power_config = {});

} // namespace xlas
