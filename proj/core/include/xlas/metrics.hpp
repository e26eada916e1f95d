// xlas — antenna selection and beamforming for mixed near/far-field XL-array downlink
// Copyright (C) 2026 xlas contributors
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

#pragma once

#include <armadillo>
#include <vector>

#include "xlas/channel.hpp"

namespace xlas
{

// Per-user antenna activation pattern (0/1 entries).
struct SelectionMask
{
    arma::uvec bits;

    SelectionMask() = default;
    explicit SelectionMask(arma::uvec b);
    static SelectionMask all_on(arma::uword n);

    arma::uword active_count() const { return arma::accu(bits); }
    arma::uword size() const { return bits.n_elem; }
    // 0/1 doubles for elementwise masking of complex vectors.
    arma::vec as_real() const { return arma::conv_to<arma::vec>::from(bits); }
};

// Per-user transmit powers under a total budget.
struct PowerVector
{
    arma::vec powers;
    double p_tot = 0.0;

    PowerVector() = default;
    PowerVector(arma::vec p, double budget);
    static PowerVector equal_split(arma::uword k, double budget);
};

struct RateReport
{
    arma::vec per_user_rate;    // bps/Hz
    arma::vec per_user_sinr;    // linear
    double sum_rate = 0.0;      // bps/Hz
    double weighted_sum = 0.0;  // bps/Hz, using UserSpec weights
    arma::mat interference;     // (k,i): received interference power at user k from beam i, watts
};

// MRT analog beams w_k = sqrt(N) * (unit LoS steering of user k); every entry
// has unit modulus. Under multipath the beam still points at the user
// location: only the LoS steering component enters.
arma::cx_mat mrt_weights(const std::vector<ChannelVector> &channels);

// SINR_k = (P_k / N) |h_k^H w_k|^2 / (sum_{i != k} (P_i / N) |h_k^H w_i|^2 + sigma^2).
RateReport rate_full_array(const std::vector<ChannelVector> &channels, const arma::cx_mat &weights,
                           const PowerVector &powers, double sigma2,
                           const arma::vec &user_weights = {});

// SINR_k = (P_k / M_k) |h_k^H V_k w_k|^2 / (sum_{i != k} (P_i / M_i) |h_k^H V_i w_i|^2 + sigma^2).
RateReport rate_with_selection(const std::vector<ChannelVector> &channels,
                               const arma::cx_mat &weights,
                               const std::vector<SelectionMask> &masks, const PowerVector &powers,
                               double sigma2, const arma::vec &user_weights = {});

// Aggregate interference user k's beam imposes on all victims:
// I_k = sum_{i != k} (1 / sqrt(M_k)) |h_i^H V_k w_k|, plus the K-1 summands.
struct CouplingReport
{
    double total = 0.0;
    arma::vec per_victim; // ordered by victim index, skipping k
};

CouplingReport interference_coupling(arma::uword k, const std::vector<ChannelVector> &channels,
                                     const arma::cx_mat &weights, const SelectionMask &mask_k);

} // namespace xlas
