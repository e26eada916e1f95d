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

namespace xlas
{

// Euclidean projection onto { p >= 0, sum(p) <= budget }. Negative entries
// are clamped first; if the remainder already fits the budget it is returned
// unchanged, otherwise the simplex threshold is found by sorting.
arma::vec project_power(const arma::vec &p, double budget);

struct PowerSolverConfig
{
    std::size_t grid_points = 2001; // two-user exhaustive grid resolution
    std::size_t sca_max_rounds = 300;
    double sca_tol = 1e-10;         // relative objective change to stop
    std::size_t pg_steps = 5;       // projected-gradient steps per round
};

// Exhaustive split of a two-user budget: scans p1 over a uniform grid with
// p2 = budget - p1 and returns the weighted-sum-rate maximizer. gains(k, i)
// is the effective link gain from beam i into user k (so the rate of user k
// is log2(1 + p_k g_kk / (sum_{i != k} p_i g_ki + noise))).
struct PowerSearchResult
{
    arma::vec powers;
    double weighted_sum_rate = 0.0;
};

PowerSearchResult two_user_power_search(const arma::mat &gains, double noise_power, double budget,
                                        const arma::vec &user_weights, const PowerSolverConfig &config = {});

// Successive-convex-approximation power allocation for K users. Each round
// linearizes the interference-plus-noise term at the current point, giving a
// concave surrogate maximized by projected gradient ascent over the budget
// simplex. objective_trace records the true weighted sum rate per round and
// is non-decreasing up to solver tolerance.
struct PowerAllocation
{
    arma::vec powers;
    double weighted_sum_rate = 0.0;
    std::vector<double> objective_trace;
};

PowerAllocation sca_power_alloc(const arma::mat &gains, double noise_power, double budget,
                                const arma::vec &user_weights, const PowerSolverConfig &config = {});

// Weighted sum rate for a gain matrix and power vector; shared by the
// solvers above and their tests.
double weighted_sum_rate(const arma::mat &gains, const arma::vec &powers, double noise_power,
                         const arma::vec &user_weights);

// The SCA surrogate maximized inside sca_power_alloc: exact concave signal
// term, interference linearized at the anchor powers. Returns the surrogate
// value at `powers` and fills grad when non-null; exposed for gradient
// certification against finite differences.
double power_alloc_surrogate(const arma::mat &gains, double noise_power, const arma::vec &user_weights,
                             const arma::vec &anchor, const arma::vec &powers, arma::vec *grad = nullptr);

} // namespace xlas
