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

#include "xlas/pdd.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace xlas
{

namespace
{

constexpr double log2_e = 1.4426950408889634074;

// t^H x for a real activation row: sum_n conj(t_n) x_n.
std::complex<double> effective_dot(const arma::cx_vec &t, const arma::mat &activations, arma::uword row)
{
    std::complex<double> sum = 0.0;
    for (arma::uword n = 0; n < t.n_elem; ++n)
        sum += std::conj(t(n)) * activations(row, n);
    return sum;
}

// Received powers at every user split into total (with own signal) and
// interference-only parts, before noise.
void received_powers(const PddProblem &problem, const PddState &state, arma::vec &total, arma::vec &interference)
{
    const arma::uword k_users = state.v.n_rows;
    total.zeros(k_users);
    interference.zeros(k_users);
    for (arma::uword k = 0; k < k_users; ++k)
    {
        for (arma::uword i = 0; i < k_users; ++i)
        {
            const double q = state.powers(i) / state.counts(i) *
                             std::norm(effective_dot(problem.effective(k, i), state.v, i));
            total(k) += q;
            if (i != k)
                interference(k) += q;
        }
    }
}

} // namespace

PddProblem make_pdd_problem(const std::vector<ChannelVector> &channels, const arma::cx_mat &weights,
                            double noise_power, double budget, const arma::vec &user_weights)
{
    if (channels.empty())
        throw std::invalid_argument("Channel list cannot be empty.");
    if (weights.n_cols != channels.size() || weights.n_rows != channels.front().entries.n_elem)
        throw std::invalid_argument("Beamforming matrix must be N x K.");
    if (noise_power <= 0.0)
        throw std::invalid_argument("Noise power must be positive.");
    if (budget <= 0.0)
        throw std::invalid_argument("Power budget must be positive.");
    if (!user_weights.is_empty() && user_weights.n_elem != channels.size())
        throw std::invalid_argument("One priority weight per user is required.");

    const arma::uword k_users = channels.size();

    PddProblem problem;
    problem.effective.set_size(k_users, k_users);
    for (arma::uword k = 0; k < k_users; ++k)
        for (arma::uword i = 0; i < k_users; ++i)
            problem.effective(k, i) = channels[k].entries % arma::conj(weights.col(i));
    problem.noise_power = noise_power;
    problem.budget = budget;
    problem.user_weights = user_weights.is_empty() ? arma::vec(k_users, arma::fill::ones) : user_weights;
    return problem;
}

PddState pdd_initial_state(std::size_t n_users, std::size_t n_antennas, double budget, const PddConfig &config)
{
    if (n_users < 1 || n_antennas < 1)
        throw std::invalid_argument("User and antenna counts must be positive.");

    PddState state;
    state.v.ones(n_users, n_antennas);
    state.vtilde = state.v;
    state.counts = arma::vec(n_users, arma::fill::value(static_cast<double>(n_antennas)));
    state.powers = arma::vec(n_users, arma::fill::value(budget / static_cast<double>(n_users)));
    state.dual_binary.zeros(n_users, n_antennas);
    state.dual_match.zeros(n_users, n_antennas);
    state.dual_count.zeros(n_users);
    state.rho = config.rho0;
    return state;
}

PddState pdd_warm_state(const std::vector<SelectionMask> &masks, double budget, const PddConfig &config,
                        const arma::vec &powers)
{
    if (masks.empty())
        throw std::invalid_argument("Warm start needs at least one mask.");

    const arma::uword k_users = masks.size();
    const arma::uword n = masks.front().size();

    PddState state = pdd_initial_state(k_users, n, budget, config);
    for (arma::uword k = 0; k < k_users; ++k)
    {
        if (masks[k].size() != n)
            throw std::invalid_argument("All warm-start masks must share the array size.");
        state.v.row(k) = masks[k].as_real().t();
        state.counts(k) = static_cast<double>(masks[k].active_count());
    }
    state.vtilde = state.v;
    if (!powers.is_empty())
    {
        if (powers.n_elem != k_users)
            throw std::invalid_argument("One warm-start power per user is required.");
        state.powers = powers;
    }
    return state;
}

PenaltyTerms penalty_terms(const PddState &state)
{
    const arma::vec r1 = arma::sum(state.v, 1) - state.counts + state.rho * state.dual_count;
    const arma::mat r2 = state.v - state.vtilde + state.rho * state.dual_match;
    const arma::mat r3 = state.v % (1.0 - state.vtilde) + state.rho * state.dual_binary;

    PenaltyTerms terms;
    terms.count_mismatch = arma::accu(arma::square(r1)) / (2.0 * state.rho);
    terms.match = arma::accu(arma::square(r2)) / (2.0 * state.rho);
    terms.binary = arma::accu(arma::square(r3)) / (2.0 * state.rho);
    return terms;
}

double relaxed_weighted_sum_rate(const PddProblem &problem, const PddState &state)
{
    arma::vec total, interference;
    received_powers(problem, state, total, interference);

    double rate = 0.0;
    for (arma::uword k = 0; k < total.n_elem; ++k)
        rate += problem.user_weights(k) *
                (std::log2(total(k) + problem.noise_power) - std::log2(interference(k) + problem.noise_power));
    return rate;
}

double penalized_objective(const PddProblem &problem, const PddState &state)
{
    return relaxed_weighted_sum_rate(problem, state) - penalty_terms(state).total();
}

double constraint_violation(const PddState &state)
{
    const double v1 = arma::abs(arma::sum(state.v, 1) - state.counts).max();
    const double v2 = arma::abs(state.v - state.vtilde).max();
    const double v3 = arma::abs(state.v % (1.0 - state.vtilde)).max();
    return std::max({v1, v2, v3});
}

double v_surrogate(const PddProblem &problem, const PddState &anchor, const arma::mat &v, arma::mat *grad)
{
    const arma::uword k_users = anchor.v.n_rows;
    const arma::uword n = anchor.v.n_cols;

    // Linearization data at the anchor: per-pair correlations and the
    // interference tangent.
    arma::cx_mat svals(k_users, k_users);
    for (arma::uword k = 0; k < k_users; ++k)
        for (arma::uword i = 0; i < k_users; ++i)
            svals(k, i) = effective_dot(problem.effective(k, i), anchor.v, i);

    arma::vec interf0(k_users, arma::fill::zeros);
    for (arma::uword k = 0; k < k_users; ++k)
        for (arma::uword i = 0; i < k_users; ++i)
            if (i != k)
                interf0(k) += anchor.powers(i) / anchor.counts(i) * std::norm(svals(k, i));

    if (grad)
        grad->zeros(k_users, n);

    double value = 0.0;
    for (arma::uword k = 0; k < k_users; ++k)
    {
        const double tangent = log2_e / (interf0(k) + problem.noise_power);

        // Signal side: each |t^H v|^2 replaced by its concave minorant
        // psi = 2 Re{conj(s) t^H v} - |s|^2, exact at the anchor.
        double acc = problem.noise_power;
        double interf = 0.0;
        arma::cx_vec tv(k_users);
        for (arma::uword i = 0; i < k_users; ++i)
        {
            const std::complex<double> s = svals(k, i);
            tv(i) = effective_dot(problem.effective(k, i), v, i);
            const double psi = 2.0 * std::real(std::conj(s) * tv(i)) - std::norm(s);
            acc += anchor.powers(i) / anchor.counts(i) * psi;
            if (i != k)
                interf += anchor.powers(i) / anchor.counts(i) * std::norm(tv(i));
        }
        if (acc <= 0.0)
            return -arma::datum::inf;

        value += problem.user_weights(k) *
                 (std::log2(acc) -
                  (std::log2(interf0(k) + problem.noise_power) + tangent * (interf - interf0(k))));

        if (grad)
        {
            for (arma::uword i = 0; i < k_users; ++i)
            {
                const double scale = anchor.powers(i) / anchor.counts(i);
                const std::complex<double> s = svals(k, i);
                for (arma::uword a = 0; a < n; ++a)
                {
                    const std::complex<double> t_conj = std::conj(problem.effective(k, i)(a));
                    double g = log2_e / acc * scale * 2.0 * std::real(std::conj(s) * t_conj);
                    if (i != k)
                        g -= tangent * scale * 2.0 * std::real(std::conj(tv(i)) * t_conj);
                    (*grad)(i, a) += problem.user_weights(k) * g;
                }
            }
        }
    }

    // Exact convex quadratic penalties in v.
    const arma::vec r1 = arma::sum(v, 1) - anchor.counts + anchor.rho * anchor.dual_count;
    const arma::mat r2 = v - anchor.vtilde + anchor.rho * anchor.dual_match;
    const arma::mat r3 = v % (1.0 - anchor.vtilde) + anchor.rho * anchor.dual_binary;
    value -= (arma::accu(arma::square(r1)) + arma::accu(arma::square(r2)) + arma::accu(arma::square(r3))) /
             (2.0 * anchor.rho);
    if (grad)
    {
        grad->each_col() -= r1 / anchor.rho;
        *grad -= (r2 + r3 % (1.0 - anchor.vtilde)) / anchor.rho;
    }
    return value;
}

double count_surrogate(const PddProblem &problem, const PddState &anchor, const arma::vec &counts, arma::vec *grad)
{
    const arma::uword k_users = anchor.v.n_rows;

    arma::mat tv2(k_users, k_users);
    for (arma::uword k = 0; k < k_users; ++k)
        for (arma::uword i = 0; i < k_users; ++i)
            tv2(k, i) = std::norm(effective_dot(problem.effective(k, i), anchor.v, i));

    arma::vec interf0(k_users, arma::fill::zeros);
    for (arma::uword k = 0; k < k_users; ++k)
        for (arma::uword i = 0; i < k_users; ++i)
            if (i != k)
                interf0(k) += anchor.powers(i) / anchor.counts(i) * tv2(k, i);

    if (grad)
        grad->zeros(k_users);

    double value = 0.0;
    for (arma::uword k = 0; k < k_users; ++k)
    {
        const double tangent = log2_e / (interf0(k) + problem.noise_power);

        // Signal side: 1/M replaced by its tangent at the anchor counts
        // (a lower bound of the convex reciprocal); interference side keeps
        // the exact 1/M, whose negative log tangent stays a minorant.
        double acc = problem.noise_power;
        double interf = 0.0;
        for (arma::uword i = 0; i < k_users; ++i)
        {
            const double m_hat = anchor.counts(i);
            const double xi = 1.0 / m_hat - (counts(i) - m_hat) / (m_hat * m_hat);
            acc += anchor.powers(i) * tv2(k, i) * xi;
            if (i != k)
                interf += anchor.powers(i) * tv2(k, i) / counts(i);
        }
        if (acc <= 0.0)
            return -arma::datum::inf;

        value += problem.user_weights(k) *
                 (std::log2(acc) -
                  (std::log2(interf0(k) + problem.noise_power) + tangent * (interf - interf0(k))));

        if (grad)
        {
            for (arma::uword i = 0; i < k_users; ++i)
            {
                const double m_hat = anchor.counts(i);
                double g = log2_e / acc * anchor.powers(i) * tv2(k, i) * (-1.0 / (m_hat * m_hat));
                if (i != k)
                    g -= tangent * (-anchor.powers(i) * tv2(k, i) / (counts(i) * counts(i)));
                (*grad)(i) += problem.user_weights(k) * g;
            }
        }
    }

    const arma::vec r1 = arma::sum(anchor.v, 1) - counts + anchor.rho * anchor.dual_count;
    value -= arma::accu(arma::square(r1)) / (2.0 * anchor.rho);
    if (grad)
        *grad += r1 / anchor.rho;
    return value;
}

double power_surrogate(const PddProblem &problem, const PddState &anchor, const arma::vec &powers, arma::vec *grad)
{
    const arma::uword k_users = anchor.v.n_rows;

    arma::mat gains(k_users, k_users);
    for (arma::uword k = 0; k < k_users; ++k)
        for (arma::uword i = 0; i < k_users; ++i)
            gains(k, i) = std::norm(effective_dot(problem.effective(k, i), anchor.v, i)) / anchor.counts(i);

    return power_alloc_surrogate(gains, problem.noise_power, problem.user_weights, anchor.powers, powers, grad);
}

namespace
{

// Projected gradient ascent with doubling/backtracking line search shared by
// the three gradient blocks. Value is a callable (candidate, grad*) ->
// surrogate value; project maps a free candidate onto the feasible set.
template <typename Vars, typename Value, typename Project>
void ascend_block(Vars &x, double initial_step, double step_floor, std::size_t pg_iters, const Value &value,
                  const Project &project)
{
    Vars grad;
    double cur = value(x, &grad);
    double step = initial_step;

    for (std::size_t it = 0; it < pg_iters; ++it)
    {
        Vars x_next, grad_next;
        double val_next = -arma::datum::inf;
        while (step > step_floor)
        {
            x_next = project(x + step * grad);
            val_next = value(x_next, &grad_next);
            if (val_next > cur - 1e-15)
                break;
            step *= 0.5;
        }
        if (step <= step_floor || val_next <= cur + 1e-14)
        {
            if (val_next > cur)
                x = x_next;
            break;
        }
        x = x_next;
        cur = val_next;
        grad = grad_next;
        step *= 2.0;
    }
}

} // namespace

void inner_update_v(const PddProblem &problem, PddState &state, const PddConfig &config)
{
    const PddState anchor = state;
    arma::mat v = state.v;
    ascend_block(
        v, 1.0, 1e-18, config.pg_iters,
        [&](const arma::mat &x, arma::mat *g) { return v_surrogate(problem, anchor, x, g); },
        [](const arma::mat &x) { return arma::clamp(x, 0.0, 1.0); });
    state.v = v;
}

void inner_update_vtilde(PddState &state)
{
    // Per-entry quadratic in vtilde; stationary point in closed form.
    const arma::mat &v = state.v;
    state.vtilde = (v + arma::square(v) + state.rho * state.dual_match + state.rho * state.dual_binary % v) /
                   (1.0 + arma::square(v));
}

void inner_update_counts(const PddProblem &problem, PddState &state, const PddConfig &config)
{
    const PddState anchor = state;
    const double n = static_cast<double>(state.v.n_cols);
    arma::vec counts = state.counts;
    ascend_block(
        counts, 1.0, 1e-18, config.pg_iters,
        [&](const arma::vec &x, arma::vec *g) { return count_surrogate(problem, anchor, x, g); },
        [&](const arma::vec &x) { return arma::clamp(x, config.m_floor, n); });
    state.counts = counts;
}

void inner_update_powers(const PddProblem &problem, PddState &state, const PddConfig &config)
{
    const PddState anchor = state;
    arma::vec powers = state.powers;
    ascend_block(
        powers, problem.budget, 1e-18 * problem.budget, config.pg_iters,
        [&](const arma::vec &x, arma::vec *g) { return power_surrogate(problem, anchor, x, g); },
        [&](const arma::vec &x) { return project_power(x, problem.budget); });
    state.powers = powers;
}

double pdd_inner_sweep(const PddProblem &problem, PddState &state, const PddConfig &config)
{
    inner_update_v(problem, state, config);
    inner_update_vtilde(state);
    inner_update_counts(problem, state, config);
    if (config.update_powers)
        inner_update_powers(problem, state, config);
    return penalized_objective(problem, state);
}

void pdd_outer_update(PddState &state, const PddConfig &config)
{
    state.dual_binary += state.v % (1.0 - state.vtilde) / state.rho;
    state.dual_match += (state.v - state.vtilde) / state.rho;
    state.dual_count += (arma::sum(state.v, 1) - state.counts) / state.rho;
    state.rho *= config.shrink;
}

std::vector<SelectionMask> binarize_activations(const arma::mat &v, double threshold, std::size_t min_active)
{
    const arma::uword k_users = v.n_rows;
    const arma::uword n = v.n_cols;
    if (min_active < 1 || min_active > n)
        throw std::invalid_argument("Minimum active count must lie in [1, N].");

    std::vector<SelectionMask> masks;
    masks.reserve(k_users);
    for (arma::uword k = 0; k < k_users; ++k)
    {
        arma::uvec bits(n, arma::fill::zeros);
        for (arma::uword a = 0; a < n; ++a)
            if (v(k, a) >= threshold)
                bits(a) = 1;

        // Too few above threshold: top up with the largest relaxed values.
        while (arma::accu(bits) < min_active)
        {
            arma::uword best = n;
            for (arma::uword a = 0; a < n; ++a)
                if (!bits(a) && (best == n || v(k, a) > v(k, best)))
                    best = a;
            bits(best) = 1;
        }
        masks.emplace_back(std::move(bits));
    }
    return masks;
}

arma::mat selection_gains(const arma::field<arma::cx_vec> &effective, const std::vector<SelectionMask> &masks)
{
    const arma::uword k_users = effective.n_rows;
    if (masks.size() != k_users)
        throw std::invalid_argument("One selection mask per user is required.");

    arma::mat gains(k_users, k_users);
    for (arma::uword k = 0; k < k_users; ++k)
    {
        for (arma::uword i = 0; i < k_users; ++i)
        {
            std::complex<double> sum = 0.0;
            const arma::cx_vec &t = effective(k, i);
            for (arma::uword a = 0; a < t.n_elem; ++a)
                if (masks[i].bits(a))
                    sum += std::conj(t(a));
            gains(k, i) = std::norm(sum) / static_cast<double>(masks[i].active_count());
        }
    }
    return gains;
}

namespace
{

// Binarize an iterate and score it with (optionally re-optimized) powers.
struct Candidate
{
    std::vector<SelectionMask> masks;
    arma::vec powers;
    double rate = -arma::datum::inf;
};

Candidate score_binarized(const PddProblem &problem, const arma::mat &v, const PddConfig &config)
{
    Candidate cand;
    cand.masks = binarize_activations(v, config.binarize_threshold, config.min_active);
    const arma::mat gains = selection_gains(problem.effective, cand.masks);

    if (config.update_powers)
    {
        PowerAllocation alloc = sca_power_alloc(gains, problem.noise_power, problem.budget, problem.user_weights);
        cand.powers = alloc.powers;
        cand.rate = alloc.weighted_sum_rate;
    }
    else
    {
        const arma::uword k_users = gains.n_rows;
        cand.powers = arma::vec(k_users, arma::fill::value(problem.budget / static_cast<double>(k_users)));
        cand.rate = weighted_sum_rate(gains, cand.powers, problem.noise_power, problem.user_weights);
    }
    return cand;
}

} // namespace

PddResult pdd_solve(const PddProblem &problem, const PddConfig &config, const PddState &start)
{
    PddState state = start;

    PddResult result;
    Candidate best = score_binarized(problem, state.v, config);

    for (std::size_t outer = 0; outer < config.max_outer; ++outer)
    {
        double prev = penalized_objective(problem, state);
        for (std::size_t sweep = 0; sweep < config.max_inner; ++sweep)
        {
            const double objective = pdd_inner_sweep(problem, state, config);
            const bool settled = std::fabs(objective - prev) < config.inner_tol * std::max(1.0, std::fabs(prev));
            prev = objective;
            if (settled)
                break;
        }

        result.violation_trace.push_back(constraint_violation(state));
        result.objective_trace.push_back(prev);
        result.rate_trace.push_back(relaxed_weighted_sum_rate(problem, state));

        Candidate cand = score_binarized(problem, state.v, config);
        if (cand.rate > best.rate)
            best = std::move(cand);

        if (result.violation_trace.back() <= config.violation_tol)
        {
            result.converged = true;
            break;
        }
        pdd_outer_update(state, config);
    }

    result.outer_iterations = result.violation_trace.size();
    result.relaxed_rate = relaxed_weighted_sum_rate(problem, state);
    result.masks = std::move(best.masks);
    result.powers = std::move(best.powers);
    result.weighted_sum_rate = best.rate;
    return result;
}

PddResult pdd_solve(const PddProblem &problem, const PddConfig &config)
{
    const arma::uword k_users = problem.effective.n_rows;
    const arma::uword n = problem.effective(0, 0).n_elem;
    return pdd_solve(problem, config, pdd_initial_state(k_users, n, problem.budget, config));
}

PddResult pdd_multistart(const PddProblem &problem, const PddConfig &config,
                         const std::vector<SelectionMask> &warm_masks)
{
    PddResult cold = pdd_solve(problem, config);
    PddResult warm = pdd_solve(problem, config, pdd_warm_state(warm_masks, problem.budget, config));

    if (warm.weighted_sum_rate > cold.weighted_sum_rate)
    {
        warm.from_warm_start = true;
        return warm;
    }
    return cold;
}

} // namespace xlas
