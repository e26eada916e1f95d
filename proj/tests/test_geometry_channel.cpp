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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "xlas/channel.hpp"
#include "xlas/common.hpp"
#include "xlas/geometry.hpp"

using namespace xlas;

namespace
{
const double pi = constants::pi;
} // namespace

TEST_CASE("array geometry defaults and validation", "[geometry]")
{
    ArrayGeometry geom(256, 30e9);
    const double lambda = constants::speed_of_light / 30e9;
    REQUIRE(geom.wavelength() == Catch::Approx(lambda).epsilon(1e-15));
    REQUIRE(geom.spacing_m == Catch::Approx(0.5 * lambda).epsilon(1e-15));
    REQUIRE(geom.aperture() == Catch::Approx(255.0 * 0.5 * lambda).epsilon(1e-15));

    // Caller-fixed spacing is kept as given.
    ArrayGeometry custom(16, 30e9, 0.007);
    REQUIRE(custom.spacing_m == 0.007);

    REQUIRE_THROWS_AS(ArrayGeometry(0, 30e9), std::invalid_argument);
    REQUIRE_THROWS_AS(ArrayGeometry(8, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(ArrayGeometry(8, 30e9, -0.001), std::invalid_argument);
}

TEST_CASE("element offsets are symmetric half-integers", "[geometry]")
{
    ArrayGeometry geom(4, 30e9);
    const arma::vec delta = geom.element_offsets();
    REQUIRE(delta.n_elem == 4);
    REQUIRE(delta(0) == -1.5);
    REQUIRE(delta(1) == -0.5);
    REQUIRE(delta(2) == 0.5);
    REQUIRE(delta(3) == 1.5);

    // Antisymmetry holds for every array size, odd sizes center on zero.
    ArrayGeometry odd(9, 30e9);
    const arma::vec d9 = odd.element_offsets();
    REQUIRE(d9(4) == 0.0);
    for (arma::uword i = 0; i < 9; ++i)
        REQUIRE(d9(i) == -d9(8 - i));
}

TEST_CASE("effective near-field boundary at the reference configuration", "[geometry]")
{
    // 256 half-wavelength elements at 30 GHz put the boresight boundary
    // a touch under 120 m.
    ArrayGeometry geom(256, 30e9);
    const double z0 = rayleigh_distance(geom, 0.0);
    const double lambda = geom.wavelength();
    const double aperture = 255.0 * 0.5 * lambda;
    const double expected = 2.0 * constants::rayleigh_eps * aperture * aperture / lambda;

    REQUIRE(z0 == Catch::Approx(expected).epsilon(1e-14));
    REQUIRE(z0 == Catch::Approx(119.23735).margin(1e-3));
    REQUIRE(std::abs(z0 - 120.0) <= 0.01 * 120.0);
}

TEST_CASE("near-field boundary shrinks away from boresight", "[geometry]")
{
    ArrayGeometry geom(256, 30e9);
    const double z0 = rayleigh_distance(geom, 0.0);

    // Even in the angle, and scaled by 1 - theta^2.
    REQUIRE(rayleigh_distance(geom, 0.5) == rayleigh_distance(geom, -0.5));
    REQUIRE(rayleigh_distance(geom, 0.5) == Catch::Approx(0.75 * z0).epsilon(1e-14));
    REQUIRE(rayleigh_distance(geom, 0.9) < rayleigh_distance(geom, 0.3));
    REQUIRE(rayleigh_distance(geom, 1.0) == 0.0);

    REQUIRE_THROWS_AS(rayleigh_distance(geom, 1.5), std::invalid_argument);
    REQUIRE_THROWS_AS(rayleigh_distance(geom, -1.0001), std::invalid_argument);
}

TEST_CASE("reference gain matches the free-space constant", "[geometry]")
{
    ArrayGeometry geom(256, 30e9);
    const double beta = reference_gain(geom);
    const double ratio = geom.wavelength() / (4.0 * pi);
    REQUIRE(beta == Catch::Approx(ratio * ratio).epsilon(1e-15));
    REQUIRE(linear_to_db(beta) == Catch::Approx(-61.99028).margin(1e-4));
    REQUIRE(std::abs(linear_to_db(beta) + 62.0) <= 0.1);
}

TEST_CASE("decibel helpers round-trip", "[geometry]")
{
    REQUIRE(db_to_linear(0.0) == 1.0);
    REQUIRE(dbm_to_watt(30.0) == Catch::Approx(1.0).epsilon(1e-14));
    REQUIRE(dbm_to_watt(-80.0) == Catch::Approx(1e-11).epsilon(1e-12));
    REQUIRE(watt_to_dbm(dbm_to_watt(17.3)) == Catch::Approx(17.3).epsilon(1e-12));
    REQUIRE(linear_to_db(db_to_linear(-6.02)) == Catch::Approx(-6.02).epsilon(1e-12));
}

TEST_CASE("near-field steering entries follow the spherical wavefront", "[channel]")
{
    ArrayGeometry geom(8, 30e9);
    const double theta = 0.25;
    const double r = 2.0;
    const arma::cx_vec steer = near_field_steering(geom, theta, r);

    REQUIRE(std::abs(arma::norm(steer) - 1.0) < 1e-12);

    // Recompute one entry from the definition.
    const arma::vec delta = geom.element_offsets();
    const double d = geom.spacing_m;
    const arma::uword i = 5;
    const double r_n = std::sqrt(r * r + delta(i) * delta(i) * d * d - 2.0 * r * theta * delta(i) * d);
    const double phase = -2.0 * pi * (r_n - r) / geom.wavelength();
    const std::complex<double> expected =
        (1.0 / std::sqrt(8.0)) * std::complex<double>(std::cos(phase), std::sin(phase));
    REQUIRE(std::abs(steer(i) - expected) < 1e-14);

    REQUIRE_THROWS_AS(near_field_steering(geom, 1.2, r), std::invalid_argument);
    REQUIRE_THROWS_AS(near_field_steering(geom, theta, 0.0), std::invalid_argument);
}

TEST_CASE("far-field steering is the linear-phase profile", "[channel]")
{
    ArrayGeometry geom(16, 30e9);
    const double theta = 0.3;
    const arma::cx_vec steer = far_field_steering(geom, theta);

    REQUIRE(std::abs(arma::norm(steer) - 1.0) < 1e-12);
    for (arma::uword i = 0; i < 16; ++i)
    {
        const double phase = pi * static_cast<double>(i) * theta;
        const std::complex<double> expected =
            (1.0 / 4.0) * std::complex<double>(std::cos(phase), std::sin(phase));
        REQUIRE(std::abs(steer(i) - expected) < 1e-14);
    }

    REQUIRE_THROWS_AS(far_field_steering(geom, -1.01), std::invalid_argument);
}

TEST_CASE("spherical steering converges to the planar profile far out", "[channel]")
{
    for (arma::uword n : {arma::uword(64), arma::uword(256)})
    {
        ArrayGeometry geom(n, 30e9);
        for (double theta : {-0.5, 0.0, 0.5})
        {
            const double far_r = 100.0 * rayleigh_distance(geom, theta);
            const arma::cx_vec near = near_field_steering(geom, theta, far_r);
            const arma::cx_vec far = far_field_steering(geom, theta);
            const double align = std::abs(arma::cdot(far, near));
            INFO("n=" << n << " theta=" << theta << " align=" << align);
            REQUIRE(align > 0.99);
        }
    }
}

TEST_CASE("user classification against the angle-dependent boundary", "[channel]")
{
    ArrayGeometry geom(256, 30e9);
    const double z = rayleigh_distance(geom, 0.2);

    UserSpec near_user(geom, 0.2, 0.5 * z);
    UserSpec far_user(geom, 0.2, 2.0 * z);
    REQUIRE(near_user.near_field);
    REQUIRE_FALSE(far_user.near_field);

    // Dispatch matches the classification.
    REQUIRE(arma::approx_equal(location_steering(geom, near_user),
                               near_field_steering(geom, 0.2, 0.5 * z), "absdiff", 1e-15));
    REQUIRE(arma::approx_equal(location_steering(geom, far_user), far_field_steering(geom, 0.2),
                               "absdiff", 1e-15));

    REQUIRE_THROWS_AS(UserSpec(geom, 1.5, 10.0), std::invalid_argument);
    REQUIRE_THROWS_AS(UserSpec(geom, 0.0, -1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(UserSpec(geom, 0.0, 10.0, -0.5), std::invalid_argument);
}

TEST_CASE("line-of-sight channel composes gain and steering", "[channel]")
{
    ArrayGeometry geom(64, 30e9);
    const double beta = reference_gain(geom);
    const double z = rayleigh_distance(geom, 0.2);
    const double r = 0.1 * z;
    UserSpec user(geom, 0.2, r);
    const ChannelVector chan = los_channel(geom, user, beta);

    REQUIRE(std::abs(chan.gain) == Catch::Approx(std::sqrt(beta) / r).epsilon(1e-13));
    const double phase = -2.0 * pi * r / geom.wavelength();
    const std::complex<double> expected_gain =
        std::sqrt(beta) / r * std::complex<double>(std::cos(phase), std::sin(phase));
    REQUIRE(std::abs(chan.gain - expected_gain) < 1e-13 * std::abs(chan.gain));

    // entries = sqrt(N) * gain * steering, so the norm is sqrt(N) |gain|.
    REQUIRE(arma::norm(chan.entries) ==
            Catch::Approx(8.0 * std::abs(chan.gain)).epsilon(1e-12));
    const arma::cx_vec recomposed = 8.0 * chan.gain * chan.los_steering;
    REQUIRE(arma::norm(chan.entries - recomposed) < 1e-12 * arma::norm(chan.entries));

    REQUIRE_THROWS_AS(los_channel(geom, user, 0.0), std::invalid_argument);
}

TEST_CASE("scattered paths are seed-deterministic and kappa-scaled", "[channel]")
{
    ArrayGeometry geom(32, 30e9);
    const double beta = reference_gain(geom);
    const double z = rayleigh_distance(geom, 0.1);
    UserSpec user(geom, 0.1, 0.3 * z);
    const ChannelVector los = los_channel(geom, user, beta);

    const ChannelVector a = rician_channel(geom, user, beta, 5.0, 6, 42);
    const ChannelVector b = rician_channel(geom, user, beta, 5.0, 6, 42);
    const ChannelVector c = rician_channel(geom, user, beta, 5.0, 6, 43);
    REQUIRE(arma::norm(a.entries - b.entries) == 0.0);
    REQUIRE(arma::norm(a.entries - c.entries) > 0.0);

    // The deterministic part is exactly the LoS channel.
    REQUIRE(arma::norm(a.los_steering - los.los_steering) == 0.0);
    REQUIRE(a.gain == los.gain);

    // Mean scattered-to-LoS energy tracks 1/kappa.
    const double los_energy = std::pow(arma::norm(los.entries), 2);
    auto mean_ratio = [&](double kappa) {
        double acc = 0.0;
        const int draws = 1000;
        for (int s = 0; s < draws; ++s)
        {
            const ChannelVector chan = rician_channel(geom, user, beta, kappa, 6, 1000 + s);
            acc += std::pow(arma::norm(chan.entries - los.entries), 2) / los_energy;
        }
        return acc / draws;
    };
    const double r2 = mean_ratio(2.0);
    const double r10 = mean_ratio(10.0);
    INFO("ratio kappa=2: " << r2 << "  kappa=10: " << r10);
    REQUIRE(r2 > 0.42);
    REQUIRE(r2 < 0.58);
    REQUIRE(r10 > 0.084);
    REQUIRE(r10 < 0.116);
    REQUIRE(r10 < r2);

    REQUIRE_THROWS_AS(rician_channel(geom, user, beta, 0.0, 6, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(rician_channel(geom, user, beta, 5.0, 0, 1), std::invalid_argument);
}

TEST_CASE("perfect CSI passes the channel through untouched", "[channel]")
{
    ArrayGeometry geom(64, 30e9);
    const double beta = reference_gain(geom);
    UserSpec user(geom, 0.15, 40.0);
    const ChannelVector chan = los_channel(geom, user, beta);

    const ChannelVector same = apply_csi_error(chan, CsiModel{0.0, CsiErrorMode::per_entry}, 7);
    REQUIRE(arma::norm(same.entries - chan.entries) == 0.0);
    REQUIRE(arma::norm(same.los_steering - chan.los_steering) == 0.0);

    REQUIRE_THROWS_AS(apply_csi_error(chan, CsiModel{-0.1, CsiErrorMode::per_entry}, 7),
                      std::invalid_argument);
}

TEST_CASE("estimation error energy matches the configured level", "[channel]")
{
    ArrayGeometry geom(64, 30e9);
    const double beta = reference_gain(geom);
    UserSpec user(geom, 0.15, 40.0);
    const ChannelVector chan = los_channel(geom, user, beta);
    const double energy = std::pow(arma::norm(chan.entries), 2);

    auto mean_ratio = [&](CsiErrorMode mode, int draws) {
        CsiModel model{0.1, mode};
        double acc = 0.0;
        for (int s = 0; s < draws; ++s)
        {
            const ChannelVector noisy = apply_csi_error(chan, model, 100 + s);
            acc += std::pow(arma::norm(noisy.entries - chan.entries), 2) / energy;
        }
        return acc / draws;
    };

    // Per-entry mode spreads eps^2 * ||h||^2 across the array.
    const double per_entry = mean_ratio(CsiErrorMode::per_entry, 10000);
    REQUIRE(per_entry > 0.0095);
    REQUIRE(per_entry < 0.0105);

    // Literal mode applies the full variance to every entry: N times more.
    const double literal = mean_ratio(CsiErrorMode::literal, 2000);
    REQUIRE(literal > 0.608);
    REQUIRE(literal < 0.672);
}

TEST_CASE("perturbed steering keeps the analog modulus constraint", "[channel]")
{
    ArrayGeometry geom(32, 30e9);
    const double beta = reference_gain(geom);
    UserSpec user(geom, -0.2, 60.0);
    const ChannelVector chan = los_channel(geom, user, beta);
    const ChannelVector noisy = apply_csi_error(chan, CsiModel{0.2, CsiErrorMode::per_entry}, 11);

    const double scale = 1.0 / std::sqrt(32.0);
    for (arma::uword i = 0; i < 32; ++i)
    {
        REQUIRE(std::abs(std::abs(noisy.los_steering(i)) - scale) < 1e-12);
        REQUIRE(std::arg(noisy.los_steering(i)) ==
                Catch::Approx(std::arg(noisy.entries(i))).margin(1e-12));
    }

    // Same seed, same estimate; the perturbation really landed.
    const ChannelVector again = apply_csi_error(chan, CsiModel{0.2, CsiErrorMode::per_entry}, 11);
    REQUIRE(arma::norm(again.entries - noisy.entries) == 0.0);
    REQUIRE(arma::norm(noisy.entries - chan.entries) > 0.0);
}
