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

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace xlas
{

// Deterministic, platform-independent random streams.
//
// One master seed per experiment row is split into independent named
// component streams (channel, NLoS scatterers, CSI noise, random masks, ...)
// so that all schemes evaluated on a row observe identical channel draws.
// Distribution sampling is implemented explicitly (no std::*_distribution),
// because the standard library does not pin those algorithms across
// implementations and byte-identical CSV output is part of the contract.

// splitmix64 step; the standard finalizer from Steele et al.
inline std::uint64_t splitmix64(std::uint64_t &state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d9e84952df3e73ULL;
    return z ^ (z >> 31);
}

// Derives child seeds from a master seed and a stream tag.
class SeedSequence
{
  public:
    explicit SeedSequence(std::uint64_t master) : master_(master) {}

    // Stable 64-bit stream id: FNV-1a over the tag, mixed with the master
    // seed through two splitmix64 rounds.
    std::uint64_t derive(std::string_view tag, std::uint64_t index = 0) const
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (char ch : tag)
            h = (h ^ static_cast<unsigned char>(ch)) * 0x100000001b3ULL;
        std::uint64_t s = master_ ^ h;
        std::uint64_t out = splitmix64(s);
        s ^= index * 0x9e3779b97f4a7c15ULL;
        out ^= splitmix64(s);
        return out;
    }

    std::uint64_t master() const { return master_; }

  private:
    std::uint64_t master_;
};

// Seeded generator with explicit uniform / Gaussian sampling.
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform()
    {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller on explicit uniforms.
    double normal()
    {
        if (have_spare_)
        {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0)
            u1 = uniform();
        const double u2 = uniform();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        const double ang = 2.0 * 3.141592653589793238462643383279502884 * u2;
        spare_ = mag * std::sin(ang);
        have_spare_ = true;
        return mag * std::cos(ang);
    }

    // CN(0, 1): independent real/imag parts with variance 1/2 each.
    std::complex<double> cnormal()
    {
        const double inv_sqrt2 = 0.7071067811865475244;
        return {normal() * inv_sqrt2, normal() * inv_sqrt2};
    }

    // Uniform integer in [0, n) by rejection; n must be positive.
    std::uint64_t integer(std::uint64_t n)
    {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x = eng_();
        while (x >= limit)
            x = eng_();
        return x % n;
    }

    std::uint64_t raw() { return eng_(); }

  private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace xlas
