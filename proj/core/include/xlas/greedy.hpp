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
#include <vector>

#include <armadillo>

#include "xlas/channel.hpp"
#include "xlas/metrics.hpp"

namespace xlas
{

// Per-antenna correlation contributions c_n between an interfered user's
// channel direction and a served user's beamforming weights. The coupling a
// subarray S leaves on the victim is |sum_{n in S} c_n| / sqrt(|S|), so each
// antenna's removal shifts the residual sum by -c_n.
arma::cx_vec correlation_contributions(const arma::cx_vec &victim_steering, const arma::cx_vec &weights);

// Record of a greedy deactivation run. order[j] is the j-th antenna switched
// off (0-based index into the array), coupling[j] is the victim coupling
// after j removals; coupling.front() is the full-array value, so the vectors
// satisfy coupling.size() == order.size() + 1.
struct DeactivationTrajectory
{
    std::vector<arma::uword> order;
    std::vector<double> coupling;

    // Number of active antennas after j removals, given array size n.
    std::size_t active_after(std::size_t n, std::size_t j) const;
};

// Two-user greedy deactivation on precomputed contributions. Starting from
// the full array, repeatedly switches off the antenna whose contribution
// phase lies closest (modulo pi) to the phase of the residual sum; ties fall
// to the smaller |s - c_n|, then to the lowest antenna index. Runs until
// target_active antennas remain (>= 1).
DeactivationTrajectory greedy_deactivate_two_user(const arma::cx_vec &contributions, std::size_t target_active);

// Predicted coupling reduction from one removal when per-antenna phases are
// nearly aligned with the residual: cos(angular gap) / sqrt(remaining count).
double aligned_removal_reduction(std::size_t n_antennas, std::size_t removals_done, double phase_gap);

// Least-squares line through the early, decaying part of a coupling
// trajectory, fitted against the removal count. The fit window ends at the
// first point below floor_fraction * coupling[0] or at the trajectory's
// minimum, whichever comes first (always >= 2 points).
struct DecayFit
{
    double intercept = 0.0;     // fitted coupling at zero removals
    double slope = 0.0;         // per-removal decrease (positive = decaying)
    std::size_t first = 0;      // first removal index in the window
    std::size_t last = 0;       // one past the last removal index
    double residual_rmse = 0.0; // fit quality over the window
};

DecayFit fit_linear_decay(const std::vector<double> &coupling, double floor_fraction = 0.1);

// Closed-form removal counts for the two-user trade-off between residual
// interference and array gain, given a linearized coupling decay
// I_k(l) ~= I0_k - alpha_k * l. Returns the floored per-user counts,
// clamped to [0, n - 1].
struct RemovalCounts
{
    std::size_t user1 = 0;
    std::size_t user2 = 0;
};

RemovalCounts closed_form_removal_counts(std::size_t n_antennas, double i0_1, double alpha_1, double i0_2,
                                         double alpha_2, double p1, double p2, double gain2_sq, double gain1_sq,
                                         double noise_power);

// Multi-user greedy deactivation for user k against all other users' MRT
// beams. Each step removes the antenna minimizing the summed post-removal
// residuals sum_i |s_i - z_{k,i,n}|; the returned mask is the cardinality
// along the trajectory (including no removals) with the least aggregate
// coupling, floored at min_active antennas. First occurrence wins ties.
struct MultiUserSelection
{
    SelectionMask mask;                      // chosen active set for user k
    std::vector<arma::uword> removal_order;  // full deactivation sequence
    std::vector<double> aggregate_coupling;  // coupling after 0..N-1 removals
    std::size_t chosen_removals = 0;         // index of the minimum
};

MultiUserSelection greedy_deactivate_multi_user(std::size_t k, const std::vector<ChannelVector> &channels,
                                                const arma::cx_mat &weights, std::size_t min_active = 1);

} // namespace xlas
