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

#include "xlmimo/errors.hpp"
#include "xlmimo/precoding.hpp"
#include "xlmimo/rng.hpp"

using namespace xlmimo;

namespace
{
    arma::cx_mat random_channel(arma::uword k, arma::uword n, std::uint64_t seed)
    {
        arma::cx_mat h(k, n);
        for (arma::uword i = 0; i < k; i++)
            for (arma::uword j = 0; j < n; j++)
                h(i, j) = rng::complex_gaussian(
                    rng::key(seed, static_cast<std::int64_t>(i), static_cast<std::int64_t>(j), 0, 0));
        return h;
    }

    double residual(const arma::cx_mat &h, const arma::cx_mat &w)
    {
        return arma::norm(h * w - arma::eye<arma::cx_mat>(h.n_rows, h.n_rows), "fro");
    }

    /// Oracle route: Cholesky factorization of the Gram matrix with two
    /// triangular solves, instead of the library's direct Gram solve.
    arma::cx_mat zf_via_cholesky(const arma::cx_mat &h)
    {
        const arma::cx_mat gram = h * h.t();
        const arma::cx_mat upper = arma::chol(gram);
        const arma::cx_mat eye_k(arma::eye<arma::cx_mat>(h.n_rows, h.n_rows));
        const arma::cx_mat y = arma::solve(arma::trimatl(upper.t()), eye_k);
        const arma::cx_mat inv = arma::solve(arma::trimatu(upper), y);
        return h.t() * inv;
    }
}

TEST_CASE("zf_exact", "[precoding]")
{
    SECTION("identity channel gives the identity precoder")
    {
        const arma::cx_mat h(arma::eye<arma::cx_mat>(4, 4));
        const Precoder p = zf_exact(h);
        CHECK(p.method == Precoder::Method::exact);
        REQUIRE(arma::abs(p.weights - h).max() < 1e-12);
    }

    SECTION("defining residual on random channels")
    {
        for (std::uint64_t trial = 0; trial < 5; trial++)
        {
            const arma::cx_mat h = random_channel(4, 16, 60 + trial);
            const Precoder p = zf_exact(h);
            REQUIRE(residual(h, p.weights) < 1e-9);
        }
    }

    SECTION("agrees with the Cholesky-factorization route")
    {
        const arma::cx_mat h = random_channel(4, 64, 77);
        const Precoder p = zf_exact(h);
        const arma::cx_mat oracle = zf_via_cholesky(h);
        REQUIRE(arma::norm(arma::cx_mat(p.weights - oracle), "fro") <
                1e-9 * arma::norm(oracle, "fro"));
    }

    SECTION("rank-deficient channels are rejected")
    {
        arma::cx_mat h = random_channel(4, 16, 80);
        h.row(2) = h.row(1);
        CHECK_THROWS_AS(zf_exact(h), singular_gram_error);
        CHECK_THROWS_AS(zf_exact(random_channel(8, 4, 81)), std::invalid_argument);
    }
}

TEST_CASE("zf_neumann", "[precoding]")
{
    SECTION("orthogonal user channels need no series terms")
    {
        // rows with disjoint support: the Gram matrix is exactly diagonal
        arma::cx_mat h(4, 16, arma::fill::zeros);
        for (arma::uword i = 0; i < 4; i++)
            for (arma::uword j = 0; j < 4; j++)
                h(i, 4 * i + j) = rng::complex_gaussian(
                    rng::key(90, static_cast<std::int64_t>(i), static_cast<std::int64_t>(j), 0, 0));
        const Precoder w0 = zf_neumann(h, 0);
        const Precoder exact = zf_exact(h);
        REQUIRE(arma::abs(w0.weights - exact.weights).max() < 1e-12);
        CHECK(w0.method == Precoder::Method::neumann);
        CHECK(w0.neumann_order == 0);
    }

    SECTION("approximation error decreases monotonically in the order")
    {
        const arma::cx_mat h = random_channel(8, 256, 91);
        const Precoder exact = zf_exact(h);
        double previous = 1e300;
        for (int order = 0; order <= 6; order++)
        {
            const Precoder p = zf_neumann(h, order);
            const double err = arma::norm(arma::cx_mat(p.weights - exact.weights), "fro");
            REQUIRE(err < previous);
            previous = err;
        }
    }

    SECTION("residual decays geometrically at the estimated rate")
    {
        const arma::cx_mat h = random_channel(8, 256, 92);
        const arma::cx_mat gram = h * h.t();
        arma::cx_mat t = -arma::diagmat(1.0 / gram.diag()) * gram;
        t.diag() += 1.0;
        const double rho = estimate_spectral_radius(t);
        REQUIRE(rho < 1.0);

        double previous = residual(h, zf_neumann(h, 1).weights);
        for (int order = 2; order <= 6; order++)
        {
            const double r = residual(h, zf_neumann(h, order).weights);
            REQUIRE(r / previous <= rho + 0.1);
            previous = r;
        }
    }

    SECTION("enough terms reproduce the exact precoder")
    {
        const arma::cx_mat h = random_channel(8, 256, 93);
        const arma::cx_mat gram = h * h.t();
        arma::cx_mat t = -arma::diagmat(1.0 / gram.diag()) * gram;
        t.diag() += 1.0;
        const double rho = estimate_spectral_radius(t);
        REQUIRE(rho < 0.9);
        const int enough = static_cast<int>(std::ceil(std::log(1e-6) / std::log(rho)));
        const Precoder exact = zf_exact(h);
        const Precoder p = zf_neumann(h, enough);
        REQUIRE(arma::norm(arma::cx_mat(p.weights - exact.weights), "fro") <
                1e-6 * arma::norm(exact.weights, "fro"));
    }

    SECTION("strongly correlated users break the contraction")
    {
        // near-duplicate rows push the spectral radius of I - D^{-1}A to ~1.5
        arma::cx_mat h = random_channel(8, 64, 94);
        for (arma::uword i = 1; i < 8; i++)
            h.row(i) = h.row(0) + 1e-3 * h.row(i);
        const arma::cx_mat gram = h * h.t();
        arma::cx_mat t = -arma::diagmat(1.0 / gram.diag()) * gram;
        t.diag() += 1.0;
        REQUIRE(estimate_spectral_radius(t) >= 1.0);
        CHECK_THROWS_AS(zf_neumann(h, 3), divergence_error);
    }

    SECTION("invalid arguments")
    {
        const arma::cx_mat h = random_channel(4, 16, 95);
        CHECK_THROWS_AS(zf_neumann(h, -1), std::invalid_argument);
    }
}

TEST_CASE("estimate_spectral_radius on known matrices", "[precoding]")
{
    SECTION("diagonal matrix")
    {
        arma::cx_mat t(5, 5, arma::fill::zeros);
        t.diag() = arma::cx_vec{{0.1, 0.0}, {-0.7, 0.0}, {0.3, 0.1}, {0.0, 0.2}, {0.05, 0.0}};
        CHECK(estimate_spectral_radius(t) == Catch::Approx(0.7).epsilon(1e-3));
    }

    SECTION("scaled identity")
    {
        arma::cx_mat t(arma::eye<arma::cx_mat>(3, 3));
        t *= 1.5;
        CHECK(estimate_spectral_radius(t) == Catch::Approx(1.5).epsilon(1e-10));
    }
}
