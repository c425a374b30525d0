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

#ifndef XLMIMO_PRECODING_HPP
#define XLMIMO_PRECODING_HPP

#include "xlmimo/channel.hpp"

namespace xlmimo
{
    struct Precoder
    {
        enum class Method
        {
            exact,
            neumann
        };

        arma::cx_mat weights; // N_t_effective x K streams
        Method method = Method::exact;
        int neumann_order = 0; // series order L when method == neumann
    };

    /// Estimated spectral radius of a square matrix: 100 power-iteration
    /// steps from a counter-seeded start vector, geometric-mean growth rate
    /// over the last `tail` steps.
    double estimate_spectral_radius(const arma::cx_mat &t, int steps = 100, int tail = 10);

    /// Exact zero-forcing: W = H^H (H H^H)^{-1}, so H W = I.
    Precoder zf_exact(const ChannelMatrix &h);
    Precoder zf_exact(const arma::cx_mat &h);

    /// Neumann-series zero-forcing around the diagonal split of A = H H^H:
    /// W = H^H sum_{n=0..L} (I - D^{-1}A)^n D^{-1}. Throws divergence_error
    /// when the estimated spectral radius of I - D^{-1}A reaches 1.
    Precoder zf_neumann(const ChannelMatrix &h, int order);
    Precoder zf_neumann(const arma::cx_mat &h, int order);
}

#endif
