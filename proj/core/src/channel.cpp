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

#include "xlas/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "xlas/rng.hpp"

namespace xlas
{

UserSpec::UserSpec(const ArrayGeometry &geom, double theta_, double range_m_, double weight_)
    : theta(theta_), range_m(range_m_), weight(weight_)
{
    if (theta_ < -1.0 || theta_ > 1.0)
        throw std::invalid_argument("Spatial angle must lie in [-1, 1].");
    if (range_m_ <= 0.0)
        throw std::invalid_argument("User range must be positive.");
    if (weight_ < 0.0)
        throw std::invalid_argument("User weight cannot be negative.");

    near_field = range_m_ < rayleigh_distance(geom, theta_);
}

arma::cx_vec near_field_steering(const ArrayGeometry &geom, double theta, double range_m)
{
    if (theta < -1.0 || theta > 1.0)
        throw std::invalid_argument("Spatial angle must lie in [-1, 1].");
    if (range_m <= 0.0)
        throw std::invalid_argument("Range must be positive.");

    const arma::uword n = geom.n_antennas;
    const double d = geom.spacing_m;
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    const double wavenumber = 2.0 * constants::pi / geom.wavelength();
    const arma::vec delta = geom.element_offsets();

    arma::cx_vec steer(n);
    for (arma::uword i = 0; i < n; ++i)
    {
        // Exact per-element distance under the spherical wavefront.
        const double r_n =
            std::sqrt(range_m * range_m + delta(i) * delta(i) * d * d - 2.0 * range_m * theta * delta(i) * d);
        const double phase = -wavenumber * (r_n - range_m);
        steer(i) = scale * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return steer;
}

arma::cx_vec far_field_steering(const ArrayGeometry &geom, double theta)
{
    if (theta < -1.0 || theta > 1.0)
        throw std::invalid_argument("Spatial angle must lie in [-1, 1].");

    const arma::uword n = geom.n_antennas;
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));

    arma::cx_vec steer(n);
    for (arma::uword i = 0; i < n; ++i)
    {
        const double phase = constants::pi * static_cast<double>(i) * theta;
        steer(i) = scale * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return steer;
}

arma::cx_vec location_steering(const ArrayGeometry &geom, const UserSpec &user)
{
    return user.near_field ? near_field_steering(geom, user.theta, user.range_m)
                           : far_field_steering(geom, user.theta);
}

ChannelVector los_channel(const ArrayGeometry &geom, const UserSpec &user, double beta)
{
    if (beta <= 0.0)
        throw std::invalid_argument("Reference gain must be positive.");

    const double phase = -2.0 * constants::pi * user.range_m / geom.wavelength();
    const std::complex<double> h =
        std::sqrt(beta) / user.range_m * std::complex<double>(std::cos(phase), std::sin(phase));

    ChannelVector chan;
    chan.los_steering = location_steering(geom, user);
    chan.gain = h;
    chan.entries = std::sqrt(static_cast<double>(geom.n_antennas)) * h * chan.los_steering;
    return chan;
}

ChannelVector rician_channel(const ArrayGeometry &geom, const UserSpec &user, double beta, double kappa_linear,
                             arma::uword num_nlos, std::uint64_t seed)
{
    if (kappa_linear <= 0.0)
        throw std::invalid_argument("Rician factor must be positive; use los_channel for the pure-LoS limit.");
    if (num_nlos < 1)
        throw std::invalid_argument("Number of scattered paths must be at least 1.");

    ChannelVector chan = los_channel(geom, user, beta);

    // Per-path gain variance chosen so the expected NLoS energy is the LoS
    // energy over kappa: E||sum_q g_q b_q||^2 = Q * var * ||b||^2 with
    // ||b|| = 1, against ||LoS||^2 = N |h|^2.
    const double n = static_cast<double>(geom.n_antennas);
    const double var = n * std::norm(chan.gain) / (static_cast<double>(num_nlos) * kappa_linear);
    const double path_scale = std::sqrt(var);

    Rng rng(seed);
    for (arma::uword q = 0; q < num_nlos; ++q)
    {
        const double theta_q = rng.uniform(-1.0, 1.0);
        const double range_q = rng.uniform(0.5 * user.range_m, 1.5 * user.range_m);
        const std::complex<double> g_q = path_scale * rng.cnormal();
        chan.entries += g_q * near_field_steering(geom, theta_q, range_q);
    }
    return chan;
}

ChannelVector apply_csi_error(const ChannelVector &channel, const CsiModel &model, std::uint64_t seed)
{
    if (model.eps < 0.0)
        throw std::invalid_argument("CSI uncertainty level cannot be negative.");

    // Perfect CSI passes the channel through untouched (bit-identical).
    if (model.eps == 0.0)
        return channel;

    const arma::uword n = channel.entries.n_elem;
    const double energy = arma::accu(arma::square(arma::abs(channel.entries)));
    double entry_var = model.eps * model.eps * energy;
    if (model.mode == CsiErrorMode::per_entry)
        entry_var /= static_cast<double>(n);
    const double noise_scale = std::sqrt(entry_var);

    ChannelVector estimate = channel;
    Rng rng(seed);
    for (arma::uword i = 0; i < n; ++i)
        estimate.entries(i) += noise_scale * rng.cnormal();

    // Beams are built from the estimate's phase profile: the analog
    // constraint keeps entries at modulus 1/sqrt(N), so only the perturbed
    // phases carry the estimation error into the beamformer.
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (arma::uword i = 0; i < n; ++i)
    {
        const double phase = std::arg(estimate.entries(i));
        estimate.los_steering(i) = scale * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return estimate;
}

} // namespace xlas
