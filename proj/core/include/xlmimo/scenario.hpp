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

#ifndef XLMIMO_SCENARIO_HPP
#define XLMIMO_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xlmimo/channel.hpp"
#include "xlmimo/metrics.hpp"

namespace xlmimo
{
    enum class ChannelKind
    {
        los_dyadic,
        los_scalar,
        nlos,
        hybrid
    };

    enum class OutputFormat
    {
        csv,
        json
    };

    /// Default grids: theta {0, pi/6, pi/3}; N {4,8,16,24,32}; d1 20
    /// log-spaced points over [5, 200].
    std::vector<double> default_theta_grid();
    std::vector<int> default_n_grid();
    std::vector<double> default_d1_grid();

    /// Full experiment description. Lengths in lambda0, angles in radians.
    struct ScenarioConfig
    {
        enum class Kind
        {
            fig4,
            fig5,
            custom
        };

        Kind kind = Kind::fig4;
        std::uint64_t seed = 1;
        OutputFormat format = OutputFormat::csv;

        // fig4: two square N x N point-antenna surfaces, receiver rotated by theta
        double side = 10.0;
        double dist = 7.0;
        std::vector<double> theta_grid = default_theta_grid();
        std::vector<int> n_grid = default_n_grid();

        // fig5: one transmit surface, UEs on the z axis at d1 and d1 + d2_offset
        int fig5_n = 20;
        std::vector<double> d1_grid = default_d1_grid();
        double d2_offset = 2.0;

        // custom: explicit geometries and channel kind
        ChannelKind channel = ChannelKind::los_dyadic;
        double rician_k = 1.0;
        HybridSpec::Normalization normalization = HybridSpec::Normalization::unit_power;
        std::optional<SurfaceSpec> tx_spec;
        std::optional<SurfaceSpec> rx_spec;
        ElementKind element_kind = ElementKind::point;
        double patch_side = 0.0;
        std::vector<Point3> ue_positions; // alternative receiver: tri-polarized points
        int quadrature_order = 3;
        std::optional<double> capacity_total_power; // request capacity output
        double capacity_noise_power = 1.0;
    };

    struct ResultRow
    {
        std::string scenario;
        std::optional<double> theta_rad;
        std::optional<int> n;
        std::optional<double> d1_lambda;
        double edof = 0.0;
        int rank = 0;
        std::optional<double> capacity_bits;
        double wall_s = 0.0;
    };

    /// Parse a JSON config document (see README for the schema). Unknown keys
    /// and invalid values raise config_error.
    ScenarioConfig parse_config(const std::string &json_text);
    ScenarioConfig load_config(const std::string &path);

    std::vector<ResultRow> run_fig4(const ScenarioConfig &config);
    std::vector<ResultRow> run_fig5(const ScenarioConfig &config);
    std::vector<ResultRow> run_custom(const ScenarioConfig &config);
    std::vector<ResultRow> run_scenario(const ScenarioConfig &config);

    /// CSV header: scenario,theta_rad,N,d1_lambda,edof,rank,wall_s
    /// (optional capacity column appended only when requested).
    std::string to_csv(const std::vector<ResultRow> &rows);
    std::string to_json(const std::vector<ResultRow> &rows);
    void emit(const std::vector<ResultRow> &rows, OutputFormat format, const std::string &path);
}

#endif
