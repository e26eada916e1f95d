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

#include "xlas/geometry.hpp"

#include <stdexcept>

namespace xlas
{

ArrayGeometry::ArrayGeometry(arma::uword n, double f_hz, double d_m) : n_antennas(n), carrier_hz(f_hz), spacing_m(d_m)
{
    if (n < 1)
        throw std::invalid_argument("Number of antennas must be at least 1.");
    if (f_hz <= 0.0)
        throw std::invalid_argument("Carrier frequency must be positive.");
    if (d_m < 0.0)
        throw std::invalid_argument("Element spacing cannot be negative.");

    // Half-wavelength spacing unless the caller fixed one.
    if (spacing_m == 0.0)
        spacing_m = 0.5 * wavelength();
}

arma::vec ArrayGeometry::element_offsets() const
{
    const double n = static_cast<double>(n_antennas);
    arma::vec delta(n_antennas);
    for (arma::uword i = 0; i < n_antennas; ++i)
        delta(i) = (2.0 * static_cast<double>(i + 1) - n - 1.0) / 2.0;
    return delta;
}

double rayleigh_distance(const ArrayGeometry &geom, double theta)
{
    if (theta < -1.0 || theta > 1.0)
        throw std::invalid_argument("Spatial angle must lie in [-1, 1].");
    const double d = geom.aperture();
    return 2.0 * constants::rayleigh_eps * d * d * (1.0 - theta * theta) / geom.wavelength();
}

double reference_gain(const ArrayGeometry &geom)
{
    const double ratio = geom.wavelength() / (4.0 * constants::pi);
    return ratio * ratio;
}

} // namespace xlas
