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

#include "xlas/common.hpp"

namespace xlas
{

// Uniform linear array on the y-axis, centered at the origin. Element n
// (1-based) sits at offset delta_n * d with delta_n = (2n - N - 1) / 2.
struct ArrayGeometry
{
    arma::uword n_antennas = 0; // N
    double carrier_hz = 0.0;    // f
    double spacing_m = 0.0;     // d; 0 requests the half-wavelength default

    ArrayGeometry() = default;
    ArrayGeometry(arma::uword n, double f_hz, double d_m = 0.0);

    double wavelength() const { return constants::speed_of_light / carrier_hz; }
    double aperture() const { return static_cast<double>(n_antennas - 1) * spacing_m; }

    // delta_n for n = 1..N; symmetric about zero.
    arma::vec element_offsets() const;
};

// Effective Rayleigh distance Z(theta) = 2 * 0.367 * D^2 (1 - theta^2) / lambda.
// theta is the spatial angle sin(phi) in [-1, 1].
double rayleigh_distance(const ArrayGeometry &geom, double theta);

// Free-space reference gain beta = (lambda / 4 pi)^2.
double reference_gain(const ArrayGeometry &geom);

} // namespace xlas
