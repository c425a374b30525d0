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

#ifndef XLMIMO_METRICS_HPP
#define XLMIMO_METRICS_HPP

#include "xlmimo/channel.hpp"

namespace xlmimo
{
    /// Default relative singular-value threshold for rank decisions. The rank
    /// of an analytic channel matrix is tolerance-dependent, so every rank
    /// query takes this as a parameter.
    inline constexpr double default_rank_threshold = 1e-10;

    struct EdofReport
    {
        double edof = 0.0;
        double trace_r = 0.0;     // tr(H H^H) = sum sigma^2
        double frobenius_r = 0.0; // ||H H^H||_F = sqrt(sum sigma^4)
        int rank = 0;             // at default_rank_threshold
        arma::vec singular_values; // descending
    };

    /// Heuristic effective degrees of freedom (tr(R)/||R||_F)^2, R = H H^H.
    EdofReport edof(const ChannelMatrix &h);
    EdofReport edof(const arma::cx_mat &h);

    /// Number of singular values >= rel_threshold * sigma_max; 0 for the zero
    /// matrix.
    int dof_rank(const ChannelMatrix &h, double rel_threshold = default_rank_threshold);
    int dof_rank(const arma::cx_mat &h, double rel_threshold = default_rank_threshold);

    enum class ApproxKind
    {
        linear, // L_T L_R / (lambda0 d)
        surface // A_T A_R / (lambda0 d)^2
    };

    /// Paraxial closed-form DoF approximation, proportionality constant 1
    /// (the classical paraxial result). size_tx/size_rx are lengths for
    /// `linear`, areas for `surface`.
    double dof_approx(ApproxKind kind, double size_tx, double size_rx, double dist,
                      const WaveParams &w = {});

    /// Water-filling eigenmode capacity in bits per channel use.
    double capacity_waterfilling(const ChannelMatrix &h, double total_power,
                                 double noise_power);
    double capacity_waterfilling(const arma::cx_mat &h, double total_power,
                                 double noise_power);
}

#endif
