// SPDX-License-Identifier: Apache-2.0
//
// xlmimo: near-field XL-MIMO channel simulation and degrees-of-freedom analysis
// Copyright (C) 2026 the xlmimo authors
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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "xlmimo/em.hpp"
#include "xlmimo/errors.hpp"
#include "xlmimo/rng.hpp"

using namespace xlmimo;

namespace
{
    const WaveParams w0{};
    const double pi = arma::datum::pi;

    Point3 random_point(std::uint64_t seed, std::int64_t i, double scale)
    {
        return {scale * (2.0 * rng::uniform_open(rng::key(seed, i, 0, 0, 0)) - 1.0),
                scale * (2.0 * rng::uniform_open(rng::key(seed, i, 1, 0, 0)) - 1.0),
                scale * (2.0 * rng::uniform_open(rng::key(seed, i, 2, 0, 0)) - 1.0)};
    }
}

TEST_CASE("wave parameters", "[em]")
{
    CHECK(w0.lambda0 == 1.0);
    CHECK(w0.wavenumber() * w0.lambda0 == 2.0 * pi);
}

TEST_CASE("scalar_green closed form", "[em]")
{
    SECTION("one-wavelength separation wraps the phase")
    {
        const auto v = scalar_green({0.0, 0.0, 1.0}, {0.0, 0.0, 0.0}, w0);
        CHECK(std::abs(v - std::complex<double>(1.0 / (4.0 * pi), 0.0)) < 1e-12);
    }

    SECTION("1/R amplitude decay")
    {
        const auto v1 = scalar_green({0.0, 0.0, 0.73}, {0.0, 0.0, 0.0}, w0);
        const auto v2 = scalar_green({0.0, 0.0, 1.46}, {0.0, 0.0, 0.0}, w0);
        CHECK(std::abs(v2) == Catch::Approx(0.5 * std::abs(v1)).epsilon(1e-13));
    }

    SECTION("seven-wavelength link distance")
    {
        const auto v = scalar_green({0.0, 0.0, 7.0}, {0.0, 0.0, 0.0}, w0);
        CHECK(std::abs(v) == Catch::Approx(1.0 / (28.0 * pi)).epsilon(1e-13));
        CHECK(std::abs(std::arg(v)) < 1e-12); // phase == 0 mod 2 pi
    }

    SECTION("coincident points raise a singularity error")
    {
        CHECK_THROWS_AS(scalar_green({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}, w0), singularity_error);
    }
}

TEST_CASE("dyadic_green closed form", "[em]")
{
    SECTION("reciprocity on random pairs")
    {
        for (int trial = 0; trial < 100; trial++)
        {
            const Point3 r = random_point(11, trial, 3.0);
            const Point3 s = random_point(23, trial, 3.0);
            if (distance(r, s) < 1e-2)
                continue;
            const arma::cx_mat33 a = dyadic_green(r, s, w0);
            const arma::cx_mat33 b = dyadic_green(s, r, w0);
            REQUIRE(arma::abs(a - b.st()).max() < 1e-12 * arma::abs(a).max());
        }
    }

    SECTION("far-field limit is the transverse scalar kernel")
    {
        const double r_far = 1e4 / w0.wavenumber(); // k0 R = 1e4
        const Point3 dir{0.36, 0.48, 0.8};
        const Point3 r{r_far * dir.x, r_far * dir.y, r_far * dir.z};
        const Point3 s{0.0, 0.0, 0.0};
        const arma::cx_mat33 g = dyadic_green(r, s, w0);

        arma::cx_mat33 transverse;
        const double u[3] = {dir.x, dir.y, dir.z};
        const std::complex<double> sg = scalar_green(r, s, w0);
        for (int i = 0; i < 3; i++)
            for (int k = 0; k < 3; k++)
                transverse(i, k) = sg * ((i == k ? 1.0 : 0.0) - u[i] * u[k]);
        CHECK(arma::norm(arma::cx_mat(g - transverse), "fro") <
              1e-3 * arma::norm(arma::cx_mat(transverse), "fro"));
    }

    SECTION("axial separation gives a diagonal kernel")
    {
        const arma::cx_mat33 g = dyadic_green({0.0, 0.0, 2.5}, {0.0, 0.0, 0.0}, w0);
        for (int i = 0; i < 3; i++)
            for (int k = 0; k < 3; k++)
                if (i != k)
                    REQUIRE(std::abs(g(i, k)) == 0.0);
        CHECK(g(0, 0) == g(1, 1));
        CHECK(std::abs(g(2, 2) - g(0, 0)) > 1e-6);
    }

    SECTION("coincident points raise a singularity error")
    {
        CHECK_THROWS_AS(dyadic_green({0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, w0), singularity_error);
    }
}

TEST_CASE("rayleigh_distance", "[em]")
{
    CHECK(rayleigh_distance(1.0, w0) == 2.0);
    CHECK(rayleigh_distance(10.0 * std::sqrt(2.0), w0) == Catch::Approx(400.0).epsilon(1e-13));
    CHECK(rayleigh_distance(2.0, w0) == 4.0 * rayleigh_distance(1.0, w0));
    CHECK_THROWS_AS(rayleigh_distance(0.0, w0), std::invalid_argument);
}

TEST_CASE("classify_region partitions (0, inf)", "[em]")
{
    SECTION("two 10-lambda0 squares at 7 lambda0 sit in the radiative near field")
    {
        const double d_ap = 10.0 * std::sqrt(2.0);
        CHECK(fresnel_distance(d_ap, w0) == Catch::Approx(32.973).epsilon(1e-3));
        CHECK(classify_region(d_ap, 7.0, w0) == FieldRegion::radiative_near_field);
    }

    SECTION("large distances are far field")
    {
        CHECK(classify_region(1.0, 1e6, w0) == FieldRegion::far_field);
    }

    SECTION("boundaries belong to the farther region")
    {
        const double d_ap = 3.0;
        CHECK(classify_region(d_ap, rayleigh_distance(d_ap, w0), w0) == FieldRegion::far_field);
        CHECK(classify_region(d_ap, fresnel_distance(d_ap, w0), w0) == FieldRegion::fresnel);
        CHECK(classify_region(d_ap, std::nextafter(rayleigh_distance(d_ap, w0), 0.0), w0) ==
              FieldRegion::fresnel);
        CHECK(classify_region(d_ap, std::nextafter(fresnel_distance(d_ap, w0), 0.0), w0) ==
              FieldRegion::radiative_near_field);
    }

    SECTION("total over a distance sweep")
    {
        for (const double d_ap : {0.05, 0.5, 2.0, 14.14})
            for (double d = 1e-3; d < 1e7; d *= 3.7)
            {
                const FieldRegion region = classify_region(d_ap, d, w0);
                const bool far = d >= rayleigh_distance(d_ap, w0);
                const bool fresnel = !far && d >= fresnel_distance(d_ap, w0);
                if (far)
                    REQUIRE(region == FieldRegion::far_field);
                else if (fresnel)
                    REQUIRE(region == FieldRegion::fresnel);
                else
                    REQUIRE(region == FieldRegion::radiative_near_field);
            }
    }

    SECTION("invalid inputs")
    {
        CHECK_THROWS_AS(classify_region(0.0, 1.0, w0), std::invalid_argument);
        CHECK_THROWS_AS(classify_region(1.0, 0.0, w0), std::invalid_argument);
    }
}

TEST_CASE("response_model across the three regions", "[em]")
{
    const Point3 tx{0.0, 0.0, 0.0};

    SECTION("zero offset makes all models agree")
    {
        const Point3 rc{0.3, -0.2, 9.0};
        const auto near = response_model(tx, rc, rc, FieldRegion::radiative_near_field, w0);
        const auto fres = response_model(tx, rc, rc, FieldRegion::fresnel, w0);
        const auto far = response_model(tx, rc, rc, FieldRegion::far_field, w0);
        CHECK(near == fres);
        CHECK(near == far);
    }

    SECTION("near-field model is the scalar kernel")
    {
        const Point3 rc{0.0, 0.0, 9.0};
        const Point3 re{0.7, -0.3, 9.2};
        CHECK(response_model(tx, re, rc, FieldRegion::radiative_near_field, w0) ==
              scalar_green(re, tx, w0));
    }

    SECTION("far-field phase error vanishes with distance")
    {
        const Point3 rc{0.0, 0.0, 1e4};
        const Point3 re{1.0, 0.0, 1e4};
        const auto exact = response_model(tx, re, rc, FieldRegion::radiative_near_field, w0);
        const auto planar = response_model(tx, re, rc, FieldRegion::far_field, w0);
        CHECK(std::abs(std::arg(planar / exact)) < 1e-3);
    }

    SECTION("model error is non-increasing over a geometric distance sweep")
    {
        // receiver: 5x5 surface of side 2, swept away from the transmitter
        double previous_fresnel = 1e300, previous_far = 1e300;
        for (double d = 10.0; d <= 10.0 * 64.0; d *= 2.0)
        {
            const Point3 rc{0.0, 0.0, d};
            double worst_fresnel = 0.0, worst_far = 0.0;
            for (int ix = -2; ix <= 2; ix++)
                for (int iy = -2; iy <= 2; iy++)
                {
                    const Point3 re{0.5 * ix, 0.5 * iy, d};
                    const auto exact =
                        response_model(tx, re, rc, FieldRegion::radiative_near_field, w0);
                    const auto fres = response_model(tx, re, rc, FieldRegion::fresnel, w0);
                    const auto far = response_model(tx, re, rc, FieldRegion::far_field, w0);
                    worst_fresnel = std::max(worst_fresnel, std::abs(fres - exact) / std::abs(exact));
                    worst_far = std::max(worst_far, std::abs(std::arg(far / exact)));
                }
            REQUIRE(worst_fresnel <= previous_fresnel + 1e-15);
            REQUIRE(worst_far <= previous_far + 1e-15);
            previous_fresnel = worst_fresnel;
            previous_far = worst_far;
        }
    }

    SECTION("coincident transmitter raises a singularity error")
    {
        const Point3 rc{0.0, 0.0, 0.0};
        CHECK_THROWS_AS(response_model(tx, {1.0, 0.0, 0.0}, rc, FieldRegion::far_field, w0),
                        singularity_error);
    }
}

TEST_CASE("patch-averaged kernels reduce to point kernels", "[em]")
{
    const std::vector<Point3> point_node = {{0.0, 0.0, 0.0}};
    arma::mat33 eye;
    eye.eye();
    const Point3 r{0.4, 0.1, 5.0}, s{0.0, 0.0, 0.0};

    CHECK(scalar_green_avg(r, point_node, eye, s, point_node, eye, w0) == scalar_green(r, s, w0));
    CHECK(arma::abs(dyadic_green_avg(r, point_node, eye, s, point_node, eye, w0) -
                    dyadic_green(r, s, w0))
              .max() == 0.0);

    // averaging over a small patch stays close to the center value
    std::vector<Point3> patch_nodes;
    for (int a = 0; a < 3; a++)
        for (int b = 0; b < 3; b++)
            patch_nodes.push_back({((a + 0.5) / 3.0 - 0.5) * 0.2, ((b + 0.5) / 3.0 - 0.5) * 0.2, 0.0});
    const auto averaged = scalar_green_avg(r, patch_nodes, eye, s, point_node, eye, w0);
    CHECK(std::abs(averaged - scalar_green(r, s, w0)) < 0.05 * std::abs(scalar_green(r, s, w0)));
}
