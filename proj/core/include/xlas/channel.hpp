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
#include <complex>
#include <cstdint>

#include "xlas/geometry.hpp"

namespace xlas
{

// A user location in polar coordinates seen from the array center.
// theta = sin(physical angle) in [-1, 1]. Users exactly on the Rayleigh
// boundary are labeled far-field (deterministic tie-break).
struct UserSpec
{
    double theta = 0.0;
    double range_m = 0.0;
    bool near_field = false;
    double weight = 1.0;

    UserSpec() = default;
    UserSpec(const ArrayGeometry &geom, double theta_, double range_m_, double weight_ = 1.0);
};

// Downlink channel of one user: full entries plus the LoS pieces the
// beamformer is built from. For a pure LoS channel,
// entries = sqrt(N) * gain * los_steering.
struct ChannelVector
{
    arma::cx_vec entries;
    arma::cx_vec los_steering;       // unit-norm steering at the user location
    std::complex<double> gain = 0.0; // sqrt(beta)/r * exp(-j 2 pi r / lambda)
};

// Unit-norm uniform-spherical-wave steering vector at (theta, r):
// entry n = (1/sqrt(N)) exp(-j 2 pi (r^(n) - r) / lambda) with
// r^(n) = sqrt(r^2 + delta_n^2 d^2 - 2 r theta delta_n d).
arma::cx_vec near_field_steering(const ArrayGeometry &geom, double theta, double range_m);

// Unit-norm planar-wave steering vector: entry n = (1/sqrt(N)) e^{j pi (n-1) theta}.
arma::cx_vec far_field_steering(const ArrayGeometry &geom, double theta);

// Steering at the user location, picked by the user's field label.
arma::cx_vec location_steering(const ArrayGeometry &geom, const UserSpec &user);

// LoS channel sqrt(N) * h * steering with h = (sqrt(beta)/r) e^{-j 2 pi r / lambda}.
ChannelVector los_channel(const ArrayGeometry &geom, const UserSpec &user, double beta);

// LoS plus Q scattered paths. Each path is a near-field steering vector at a
// random scatterer (angle uniform in [-1,1], range uniform in [0.5 r, 1.5 r])
// with an i.i.d. complex Gaussian gain scaled so E[||NLoS||^2] = ||LoS||^2 / kappa.
ChannelVector rician_channel(const ArrayGeometry &geom, const UserSpec &user, double beta,
                             double kappa_linear, arma::uword num_nlos, std::uint64_t seed);

// Channel-estimate perturbation h + dh, dh ~ CN(0, sigma_e^2 I).
// per_entry: sigma_e^2 = eps^2 ||h||^2 / N, so E||dh||^2 = eps^2 ||h||^2.
// literal:   sigma_e^2 = eps^2 ||h||^2 (N-fold amplification; the covariance
// expression taken at face value).
enum class CsiErrorMode
{
    per_entry,
    literal
};

struct CsiModel
{
    double eps = 0.0;
    CsiErrorMode mode = CsiErrorMode::per_entry;
};

ChannelVector apply_csi_error(const ChannelVector &channel, const CsiModel &model,
                              std::uint64_t seed);

} // namespace xlas
