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

#include "xlmimo/precoding.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "xlmimo/errors.hpp"
#include "xlmimo/rng.hpp"

namespace xlmimo
{
    double estimate_spectral_radius(const arma::cx_mat &t, int steps, int tail)
    {
        if (!t.is_square() || t.n_rows == 0)
            throw std::invalid_argument("estimate_spectral_radius: square matrix required");
        if (steps < 1 || tail < 1 || tail > steps)
            throw std::invalid_argument("estimate_spectral_radius: bad iteration counts");

        arma::cx_vec x(t.n_rows);
        for (arma::uword i = 0; i < x.n_elem; i++)
            x(i) = rng::complex_gaussian(rng::key(0x9d2c5680u, static_cast<std::int64_t>(i), 0, 0, 0));
        x /= arma::norm(x);

        double log_growth = 0.0;
        for (int k = 1; k <= steps; k++)
        {
            x = t * x;
            const double nrm = arma::norm(x);
            if (!(nrm > 0.0))
                return 0.0;
            x /= nrm;
            if (k > steps - tail)
                log_growth += std::log(nrm);
        }
        return std::exp(log_growth / tail);
    }

    Precoder zf_exact(const arma::cx_mat &h)
    {
        if (h.n_rows == 0 || h.n_rows > h.n_cols)
            throw std::invalid_argument("zf_exact: needs K streams <= N antennas");

        arma::vec s;
        if (!arma::svd(s, h))
            throw std::runtime_error("zf_exact: SVD failed");
        if (!(s(s.n_elem - 1) > 1e-12 * s(0)))
            throw singular_gram_error("zf_exact: channel is rank deficient (sigma_min <= 1e-12 sigma_max)");

        const arma::cx_mat gram = h * h.t();
        arma::cx_mat gram_inv;
        if (!arma::solve(gram_inv, gram, arma::cx_mat(arma::eye<arma::cx_mat>(h.n_rows, h.n_rows))))
            throw singular_gram_error("zf_exact: Gram solve failed");

        Precoder p;
        p.method = Precoder::Method::exact;
        p.weights = h.t() * gram_inv;
        return p;
    }

    Precoder zf_exact(const ChannelMatrix &h) { return zf_exact(h.entries); }

    Precoder zf_neumann(const arma::cx_mat &h, int order)
    {
        if (order < 0)
            throw std::invalid_argument("zf_neumann: order must be >= 0");
        if (h.n_rows == 0 || h.n_rows > h.n_cols)
            throw std::invalid_argument("zf_neumann: needs K streams <= N antennas");

        const arma::cx_mat gram = h * h.t();
        const arma::cx_vec d = gram.diag();
        const double dmax = arma::abs(d).max();
        if (!(dmax > 0.0) || arma::abs(d).min() <= 1e-14 * dmax)
            throw std::invalid_argument("zf_neumann: singular diagonal in the Gram matrix");

        const arma::cx_vec dinv = 1.0 / d;
        arma::cx_mat t = -arma::diagmat(dinv) * gram;
        t.diag() += 1.0; // T = I - D^{-1} A

        const double rho = estimate_spectral_radius(t);
        if (rho >= 1.0)
            throw divergence_error("zf_neumann: series not contractive, estimated rho = " +
                                   std::to_string(rho));

        // Horner form of sum_{n=0..L} T^n
        arma::cx_mat series(arma::eye<arma::cx_mat>(t.n_rows, t.n_rows));
        for (int n = 0; n < order; n++)
            series = t * series + arma::eye<arma::cx_mat>(t.n_rows, t.n_rows);

        Precoder p;
        p.method = Precoder::Method::neumann;
        p.neumann_order = order;
        p.weights = h.t() * (series * arma::diagmat(dinv));
        return p;
    }

    Precoder zf_neumann(const ChannelMatrix &h, int order) { return zf_neumann(h.entries, order); }
}
