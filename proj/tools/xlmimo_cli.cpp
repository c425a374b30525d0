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

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "xlmimo/em.hpp"
#include "xlmimo/errors.hpp"
#include "xlmimo/metrics.hpp"
#include "xlmimo/precoding.hpp"
#include "xlmimo/rng.hpp"
#include "xlmimo/scenario.hpp"

namespace
{
    struct SweepOptions
    {
        std::string config_path;
        std::string out_path;
        std::string format;
        std::optional<std::uint64_t> seed;
        unsigned threads = 1;
    };

    void add_sweep_flags(CLI::App *cmd, SweepOptions &opt, bool config_required)
    {
        auto *c = cmd->add_option("--config", opt.config_path, "JSON scenario config");
        if (config_required)
            c->required();
        cmd->add_option("--out", opt.out_path, "output file (default: stdout)");
        cmd->add_option("--format", opt.format, "csv or json (overrides config)")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--seed", opt.seed, "RNG seed (overrides config)");
        cmd->add_option("--threads", opt.threads, "matrix-assembly worker threads (0 = all cores)");
    }

    int run_sweep(xlmimo::ScenarioConfig::Kind kind, const SweepOptions &opt)
    {
        xlmimo::ScenarioConfig config;
        if (!opt.config_path.empty())
            config = xlmimo::load_config(opt.config_path);
        config.kind = kind;
        if (opt.seed)
            config.seed = *opt.seed;
        if (opt.format == "csv")
            config.format = xlmimo::OutputFormat::csv;
        else if (opt.format == "json")
            config.format = xlmimo::OutputFormat::json;

        xlmimo::set_assembly_threads(opt.threads);
        const auto rows = xlmimo::run_scenario(config);
        if (opt.out_path.empty())
            std::cout << (config.format == xlmimo::OutputFormat::csv ? xlmimo::to_csv(rows)
                                                                     : xlmimo::to_json(rows));
        else
            xlmimo::emit(rows, config.format, opt.out_path);
        return 0;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"near-field XL-MIMO channel simulation and DoF analysis"};
    app.require_subcommand(1);

    SweepOptions fig4_opt, fig5_opt, custom_opt;
    auto *fig4 = app.add_subcommand("fig4", "EDoF sweep over (theta, N) for two square surfaces");
    add_sweep_flags(fig4, fig4_opt, false);
    auto *fig5 = app.add_subcommand("fig5", "EDoF sweep over d1 for one surface and two UEs");
    add_sweep_flags(fig5, fig5_opt, false);
    auto *custom = app.add_subcommand("custom", "run a fully specified scenario config");
    add_sweep_flags(custom, custom_opt, true);

    double reg_aperture = 0.0, reg_side = 0.0;
    std::string reg_config;
    std::vector<double> reg_distances;
    auto *regions = app.add_subcommand("regions", "classify field regions for an aperture");
    auto *ap_opt = regions->add_option("--aperture", reg_aperture, "aperture diameter D (lambda0)");
    auto *side_opt =
        regions->add_option("--side", reg_side, "square side length; D = side*sqrt(2)");
    auto *cfg_opt = regions->add_option("--config", reg_config,
                                        "scenario config; D from its tx geometry");
    regions->add_option("--distance", reg_distances, "link distance(s) to classify")->required();
    ap_opt->excludes(side_opt)->excludes(cfg_opt);
    side_opt->excludes(cfg_opt);

    int pb_streams = 8;
    int pb_antennas = 256;
    int pb_max_order = 6;
    std::uint64_t pb_seed = 1;
    auto *pbench = app.add_subcommand("precode-bench",
                                      "Neumann vs. exact zero-forcing residual table");
    pbench->add_option("--streams", pb_streams, "number of user streams K");
    pbench->add_option("--antennas", pb_antennas, "number of transmit antennas N");
    pbench->add_option("--max-order", pb_max_order, "largest Neumann series order");
    pbench->add_option("--seed", pb_seed, "RNG seed for the random channel");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (fig4->parsed())
            return run_sweep(xlmimo::ScenarioConfig::Kind::fig4, fig4_opt);
        if (fig5->parsed())
            return run_sweep(xlmimo::ScenarioConfig::Kind::fig5, fig5_opt);
        if (custom->parsed())
            return run_sweep(xlmimo::ScenarioConfig::Kind::custom, custom_opt);

        if (regions->parsed())
        {
            const xlmimo::WaveParams w;
            double d_ap = (reg_side > 0.0) ? reg_side * std::sqrt(2.0) : reg_aperture;
            if (!reg_config.empty())
            {
                const auto config = xlmimo::load_config(reg_config);
                if (!config.tx_spec)
                    throw xlmimo::config_error("regions: config carries no tx geometry");
                d_ap = xlmimo::aperture_diameter(
                    xlmimo::build_upa(*config.tx_spec, config.element_kind, config.patch_side));
            }
            if (!(d_ap > 0.0))
                throw std::invalid_argument("regions: give --aperture, --side or --config");
            std::printf("aperture D = %.6g lambda0\n", d_ap);
            std::printf("fresnel boundary  0.62*sqrt(D^3/lambda0) = %.6g lambda0\n",
                        xlmimo::fresnel_distance(d_ap, w));
            std::printf("rayleigh boundary 2*D^2/lambda0          = %.6g lambda0\n",
                        xlmimo::rayleigh_distance(d_ap, w));
            for (const double d : reg_distances)
                std::printf("d = %-12.6g -> %s\n", d,
                            xlmimo::to_string(xlmimo::classify_region(d_ap, d, w)));
            return 0;
        }

        if (pbench->parsed())
        {
            arma::cx_mat h(pb_streams, pb_antennas);
            for (arma::uword i = 0; i < h.n_rows; i++)
                for (arma::uword j = 0; j < h.n_cols; j++)
                    h(i, j) = xlmimo::rng::complex_gaussian(
                        xlmimo::rng::key(pb_seed, static_cast<std::int64_t>(i),
                                         static_cast<std::int64_t>(j), 0, 0));

            const arma::cx_mat eye_k(arma::eye<arma::cx_mat>(h.n_rows, h.n_rows));
            const xlmimo::Precoder exact = xlmimo::zf_exact(h);
            std::printf("K=%d N=%d\n", pb_streams, pb_antennas);
            std::printf("%-10s %-14s %-14s\n", "method", "||HW - I||_F", "||W - W_exact||_F");
            std::printf("%-10s %-14.6e %-14.6e\n", "exact",
                        arma::norm(h * exact.weights - eye_k, "fro"), 0.0);
            for (int order = 0; order <= pb_max_order; order++)
            {
                const xlmimo::Precoder p = xlmimo::zf_neumann(h, order);
                std::printf("neumann-%-2d %-14.6e %-14.6e\n", order,
                            arma::norm(h * p.weights - eye_k, "fro"),
                            arma::norm(p.weights - exact.weights, "fro"));
            }
            return 0;
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
