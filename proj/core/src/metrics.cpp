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

#include "xlmimo/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "xlmimo/errors.hpp"

namespace xlmimo
{
    namespace
    {
        arma::vec singular_values(const arma::cx_mat &h)
        {
            if (h.n_elem == 0)
                throw std::invalid_argument("metrics: empty channel matrix");
            if (!h.is_finite())
                throw std::invalid_argument("metrics: channel matrix has non-finite entries");
            arma::vec s;
            if (!arma::svd(s, h))
                throw std::runtime_error("metrics: SVD failed to converge");
            return s;
        }
    }

    EdofReport edof(const arma::cx_mat &h)
    {
        arma::vec s = singular_values(h);
        const double smax = s(0);
        if (!(smax > 0.0))
            throw undefined_metric_error("edof: undefined for the zero matrix");

        double trace = 0.0, fro_sq = 0.0;
        for (const double v : s)
        {
            const double v2 = v * v;
            trace += v2;
            fro_sq += v2 * v2;
        }

        EdofReport rep;
        rep.edof = trace * trace / fro_sq;
        rep.trace_r = trace;
        rep.frobenius_r = std::sqrt(fro_sq);
        rep.rank = static_cast<int>(
            arma::sum(s >= default_rank_threshold * smax));
        rep.singular_values = std::move(s);
        return rep;
    }

    EdofReport edof(const ChannelMatrix &h) { return edof(h.entries); }

    int dof_rank(const arma::cx_mat &h, double rel_threshold)
    {
        if (!(rel_threshold > 0.0 && rel_threshold < 1.0))
            throw std::invalid_argument("dof_rank: rel_threshold must be in (0, 1)");
        arma::vec s = singular_values(h);
        if (!(s(0) > 0.0))
            return 0;
        return static_cast<int>(arma::sum(s >= rel_threshold * s(0)));
    }

    int dof_rank(const ChannelMatrix &h, double rel_threshold)
    {
        return dof_rank(h.entries, rel_threshold);
    }

    double dof_approx(ApproxKind kind, double size_tx, double size_rx, double dist,
                      const WaveParams &w)
    {
        if (!(size_tx > 0.0) || !(size_rx > 0.0) || !(dist > 0.0))
            throw std::invalid_argument("dof_approx: sizes and distance must be positive");
        if (kind == ApproxKind::linear)
            return size_tx * size_rx / (w.lambda0 * dist);
        return size_tx * size_rx / (w.lambda0 * w.lambda0 * dist * dist);
    }

    double capacity_waterfilling(const arma::cx_mat &h, double total_power, double noise_power)
    {
        if (!(total_power > 0.0) || !(noise_power > 0.0))
            throw std::invalid_argument("capacity_waterfilling: powers must be positive");
        arma::vec s = singular_values(h);
        if (!(s(0) > 0.0))
            return 0.0;

        // gains sorted descending; water level over the largest feasible
        // active set
        std::vector<double> gain;
        for (const double v : s)
            if (v > 0.0)
                gain.push_back(v * v / noise_power);

        double inv_sum = 0.0, level = 0.0;
        std::size_t active = 0;
        for (std::size_t k = 0; k < gain.size(); k++)
        {
            inv_sum += 1.0 / gain[k];
            const double mu = (total_power + inv_sum) / static_cast<double>(k + 1);
            if (mu > 1.0 / gain[k])
            {
                level = mu;
                active = k + 1;
            }
        }

        double bits = 0.0;
        for (std::size_t k = 0; k < active; k++)
            bits += std::log2(level * gain[k]);
        return bits;
    }

    double capacity_waterfilling(const ChannelMatrix &h, double total_power, double noise_power)
    {
        return capacity_waterfilling(h.entries, total_power, noise_power);
    }
}
