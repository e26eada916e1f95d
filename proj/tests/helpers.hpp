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
//
// Shared scaffolding for the unit suites: reproducible mixed-field test
// scenarios and a finite-difference gradient probe.

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <armadillo>

#include "xlas/baselines.hpp"
#include "xlas/channel.hpp"
#include "xlas/geometry.hpp"
#include "xlas/rng.hpp"

namespace xlas::test
{

// K-user LoS scenario with the first `n_near` users well inside the
// near-field boundary and the rest beyond it.  Angles are drawn from
// U(-theta_span, theta_span) so users overlap enough to interfere.
inline Scenario draw_mixed_scenario(const ArrayGeometry &geom, std::size_t k_users, std::size_t n_near,
                                    std::uint64_t seed, double budget, double theta_span = 0.3)
{
    Rng rng(SeedSequence(seed).derive("placement"));
    const double beta = reference_gain(geom);
    std::vector<ChannelVector> channels;
    channels.reserve(k_users);
    for (std::size_t k = 0; k < k_users; ++k)
    {
        const double theta = rng.uniform(-theta_span, theta_span);
        const double z = rayleigh_distance(geom, theta);
        const double r = k < n_near ? rng.uniform(0.05, 0.2) * z : rng.uniform(1.0, 2.0) * z;
        channels.push_back(los_channel(geom, UserSpec(geom, theta, r), beta));
    }
    return make_scenario(std::move(channels), 1e-11, budget);
}

// Central finite difference of a scalar field at x, one coordinate at a time.
inline arma::vec central_difference(const std::function<double(const arma::vec &)> &f, const arma::vec &x,
                                    double h = 1e-6)
{
    arma::vec grad(x.n_elem);
    for (arma::uword i = 0; i < x.n_elem; ++i)
    {
        arma::vec lo = x, hi = x;
        lo(i) -= h;
        hi(i) += h;
        grad(i) = (f(hi) - f(lo)) / (2.0 * h);
    }
    return grad;
}

// Largest relative gradient error against the finite-difference probe,
// with an absolute floor so near-zero components do not blow up the ratio.
inline double max_gradient_error(const arma::vec &analytic, const arma::vec &numeric, double floor_v = 1e-6)
{
    double worst = 0.0;
    for (arma::uword i = 0; i < analytic.n_elem; ++i)
    {
        const double scale = std::max({std::abs(analytic(i)), std::abs(numeric(i)), floor_v});
        worst = std::max(worst, std::abs(analytic(i) - numeric(i)) / scale);
    }
    return worst;
}

} // namespace xlas::test
