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
#include "xlas/power.hpp"

namespace xlas
{

// Penalty-dual-decomposition solver for the relaxed joint antenna-selection,
// power-allocation problem. The binary activation variables are relaxed to
// v in [0, 1]^N per user, with an auxiliary copy vtilde and penalty terms
// enforcing v = vtilde, v .* (1 - vtilde) = 0 and sum(v) = M at convergence.
// Inner iterations block-maximize a concave surrogate of the penalized
// weighted sum rate (v -> vtilde -> M -> P); outer iterations update duals
// and shrink the penalty weight rho.

struct PddConfig
{
    double rho0 = 800.0;          // initial penalty weight
    double shrink = 0.6;          // rho multiplier per outer iteration
    double violation_tol = 1e-3;  // stop when max constraint violation <= this
    std::size_t max_outer = 150;
    std::size_t max_inner = 30;   // block sweeps per outer iteration
    double inner_tol = 1e-5;      // relative objective change to end a sweep loop
    std::size_t pg_iters = 8;     // projected-gradient steps per block update
    double m_floor = 0.5;         // lower box bound for the relaxed counts
    std::size_t min_active = 1;   // binarization keeps at least this many antennas
    double binarize_threshold = 0.5;
    bool update_powers = true;    // false freezes the power block (equal-power ablation)
};

// Immutable problem data shared by all solver stages. effective(k, i) holds
// the entrywise products h_k .* conj(w_i), so the coupling of beam i into
// user k under activation pattern v_i is effective(k, i)^H * v_i.
struct PddProblem
{
    arma::field<arma::cx_vec> effective;
    arma::vec user_weights;
    double noise_power = 0.0;
    double budget = 0.0;
};

PddProblem make_pdd_problem(const std::vector<ChannelVector> &channels, const arma::cx_mat &weights,
                            double noise_power, double budget, const arma::vec &user_weights = {});

// Solver iterate: relaxed activations v, vtilde (K x N), relaxed counts and
// powers (K), the dual variables of the three penalty groups, and rho.
struct PddState
{
    arma::mat v;
    arma::mat vtilde;
    arma::vec counts;
    arma::vec powers;
    arma::mat dual_binary; // multipliers for v .* (1 - vtilde) = 0
    arma::mat dual_match;  // multipliers for v = vtilde
    arma::vec dual_count;  // multipliers for sum(v) = M
    double rho = 0.0;
};

// All-ones start: every antenna fully active, counts at N, equal power
// split, zero duals.
PddState pdd_initial_state(std::size_t n_users, std::size_t n_antennas, double budget, const PddConfig &config = {});

// Warm start from explicit activation masks (and optional powers; equal
// split when omitted). vtilde mirrors v, so the start is penalty-feasible.
PddState pdd_warm_state(const std::vector<SelectionMask> &masks, double budget, const PddConfig &config = {},
                        const arma::vec &powers = {});

// Quadratic penalty values at the current iterate, already scaled by
// 1 / (2 rho).
struct PenaltyTerms
{
    double count_mismatch = 0.0; // sum(v) vs M
    double match = 0.0;          // v vs vtilde
    double binary = 0.0;         // v .* (1 - vtilde)
    double total() const { return count_mismatch + match + binary; }
};

PenaltyTerms penalty_terms(const PddState &state);

// Inner objective: weighted sum rate of the relaxed iterate minus the three
// penalty terms (maximized by the block updates).
double penalized_objective(const PddProblem &problem, const PddState &state);

// Weighted sum rate of the relaxed iterate alone.
double relaxed_weighted_sum_rate(const PddProblem &problem, const PddState &state);

// Largest absolute constraint violation across all three penalty groups.
double constraint_violation(const PddState &state);

// Concave block surrogates of the penalized objective, linearized at the
// anchor state's iterate and evaluated at a candidate block value. Exposed
// so gradients can be certified against finite differences. Each returns
// the surrogate value and, when grad is non-null, fills the gradient;
// infeasible candidates (nonpositive surrogate SINR numerator) return
// -infinity with the gradient untouched.
double v_surrogate(const PddProblem &problem, const PddState &anchor, const arma::mat &v, arma::mat *grad = nullptr);
double count_surrogate(const PddProblem &problem, const PddState &anchor, const arma::vec &counts,
                       arma::vec *grad = nullptr);
double power_surrogate(const PddProblem &problem, const PddState &anchor, const arma::vec &powers,
                       arma::vec *grad = nullptr);

// Individual block updates, exposed for direct testing. Each maximizes its
// concave surrogate of the penalized objective; v, M and P use projected
// gradient ascent with backtracking, vtilde has a closed-form solution.
void inner_update_v(const PddProblem &problem, PddState &state, const PddConfig &config);
void inner_update_vtilde(PddState &state);
void inner_update_counts(const PddProblem &problem, PddState &state, const PddConfig &config);
void inner_update_powers(const PddProblem &problem, PddState &state, const PddConfig &config);

// One full block sweep (v -> vtilde -> M -> P); returns the penalized
// objective after the sweep.
double pdd_inner_sweep(const PddProblem &problem, PddState &state, const PddConfig &config);

// Dual ascent on all three groups followed by the rho shrink.
void pdd_outer_update(PddState &state, const PddConfig &config);

// Threshold the relaxed activations into masks; a user whose row has no
// entry above the threshold keeps its min_active largest entries instead.
std::vector<SelectionMask> binarize_activations(const arma::mat &v, double threshold, std::size_t min_active);

// Effective gain matrix of a binarized selection, G(k, i) =
// |sum_{n in S_i} effective(k, i)_n|^2 / |S_i|, ready for the power solvers.
arma::mat selection_gains(const arma::field<arma::cx_vec> &effective, const std::vector<SelectionMask> &masks);

struct PddResult
{
    std::vector<SelectionMask> masks;  // binarized activation patterns
    arma::vec powers;                  // re-optimized for the binarized masks
    double weighted_sum_rate = 0.0;    // binarized, after power re-optimization
    double relaxed_rate = 0.0;         // continuous iterate before binarization
    bool converged = false;
    bool from_warm_start = false;      // multistart: warm-started run won
    std::size_t outer_iterations = 0;
    std::vector<double> violation_trace; // max violation after each outer iteration
    std::vector<double> objective_trace; // penalized objective after each outer iteration
    std::vector<double> rate_trace;      // relaxed weighted sum rate per outer iteration
};

// Full solve from a given start. Tracks the best feasible binarized iterate
// seen across outer iterations (including the start when it is already
// binary) and returns it if the final iterate binarizes worse; solutions
// are compared after power re-optimization.
PddResult pdd_solve(const PddProblem &problem, const PddConfig &config, const PddState &start);

// Convenience overload using the all-ones start.
PddResult pdd_solve(const PddProblem &problem, const PddConfig &config = {});

// Best of two runs: the all-ones start and a warm start from the supplied
// masks. The relaxed surrogates are sensitive to initialization, so seeding
// one run from a combinatorial solution (e.g. the greedy selector's masks)
// guards against weak local optima of the continuous ascent.
PddResult pdd_multistart(const PddProblem &problem, const PddConfig &config,
                         const std::vector<SelectionMask> &warm_masks);

} // namespace xlas
