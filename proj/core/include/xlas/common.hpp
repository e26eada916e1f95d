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

#include <cmath>

namespace xlas
{

// Physical and model constants shared across the library.
namespace constants
{
    inline constexpr double speed_of_light = 2.9979e8; // m/s
    inline constexpr double rayleigh_eps = 0.367;      // effective Rayleigh-distance factor
    inline constexpr double pi = 3.141592653589793238462643383279502884;
}

// dB <-> linear power-ratio conversions. Power quantities only (10*log10).
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

// dBm <-> watts.
inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

} // namespace xlas
