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

#include "xlmimo/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "xlmimo/errors.hpp"

namespace xlmimo
{
    namespace
    {
        using nlohmann::ordered_json;

        double now_s()
        {
            return std::chrono::duration<double>(
                       std::chrono::steady_clock::now().time_since_epoch())
                .count();
        }

        std::string fmt_number(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.15g", v);
            return buf;
        }

        void require(bool ok, const std::string &message)
        {
            if (!ok)
                throw config_error(message);
        }

        Point3 parse_point(const ordered_json &j, const std::string &ctx)
        {
            require(j.is_array() && j.size() == 3, ctx + ": expected [x, y, z]");
            return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
        }

        SurfaceSpec parse_surface(const ordered_json &j, const std::string &ctx,
                                  ElementKind &kind_out, double &patch_side_out)
        {
            require(j.is_object(), ctx + ": expected an object");
            static const std::vector<std::string> known = {
                "nx", "ny", "spacing", "center", "rotation_axis", "rotation_angle",
                "kind", "patch_side"};
            for (const auto &item : j.items())
                require(std::find(known.begin(), known.end(), item.key()) != known.end(),
                        ctx + ": unknown key '" + item.key() + "'");

            SurfaceSpec s;
            s.n_x = j.value("nx", 1);
            s.n_y = j.value("ny", 1);
            require(j.contains("spacing"), ctx + ": 'spacing' is required");
            s.spacing = j["spacing"].get<double>();
            if (j.contains("center"))
                s.center = parse_point(j["center"], ctx + ".center");
            if (j.contains("rotation_axis"))
                s.rotation_axis = parse_point(j["rotation_axis"], ctx + ".rotation_axis");
            s.rotation_angle = j.value("rotation_angle", 0.0);

            kind_out = ElementKind::point;
            patch_side_out = 0.0;
            if (j.contains("kind"))
            {
                const std::string k = j["kind"].get<std::string>();
                if (k == "patch")
                {
                    kind_out = ElementKind::patch;
                    require(j.contains("patch_side"), ctx + ": patch elements need 'patch_side'");
                    patch_side_out = j["patch_side"].get<double>();
                }
                else
                    require(k == "point", ctx + ": kind must be 'point' or 'patch'");
            }
            return s;
        }

        /// N x N point-antenna square surface of the given side length.
        ArrayGeometry square_surface(int n, double side, const Point3 &center)
        {
            SurfaceSpec s;
            s.n_x = n;
            s.n_y = n;
            s.spacing = (n > 1) ? side / static_cast<double>(n - 1) : side;
            s.center = center;
            return build_upa(s);
        }

        ArrayGeometry ue_points(const std::vector<Point3> &positions)
        {
            ArrayGeometry g;
            g.elements = positions;
            if (!positions.empty())
            {
                Point3 c{0.0, 0.0, 0.0};
                for (const auto &p : positions)
                    c = c + p;
                g.center = (1.0 / static_cast<double>(positions.size())) * c;
            }
            return g;
        }

        /// Side lengths of the local-frame bounding box, for lattice construction.
        std::pair<double, double> planar_extent(const ArrayGeometry &g)
        {
            const auto local = local_coordinates(g);
            double lo_x = 0.0, hi_x = 0.0, lo_y = 0.0, hi_y = 0.0;
            for (const auto &p : local)
            {
                lo_x = std::min(lo_x, p.x);
                hi_x = std::max(hi_x, p.x);
                lo_y = std::min(lo_y, p.y);
                hi_y = std::max(hi_y, p.y);
            }
            return {hi_x - lo_x, hi_y - lo_y};
        }

        ResultRow measured_row(std::string scenario, std::optional<double> theta,
                               std::optional<int> n, std::optional<double> d1,
                               const ChannelMatrix &h,
                               const std::optional<double> &capacity_power,
                               double capacity_noise, double t_start)
        {
            const EdofReport rep = edof(h);
            ResultRow row;
            row.scenario = std::move(scenario);
            row.theta_rad = theta;
            row.n = n;
            row.d1_lambda = d1;
            row.edof = rep.edof;
            row.rank = rep.rank;
            if (capacity_power)
                row.capacity_bits = capacity_waterfilling(h, *capacity_power, capacity_noise);
            row.wall_s = now_s() - t_start;
            return row;
        }
    }

    std::vector<double> default_theta_grid()
    {
        const double pi = arma::datum::pi;
        return {0.0, pi / 6.0, pi / 3.0};
    }

    std::vector<int> default_n_grid() { return {4, 8, 16, 24, 32}; }

    std::vector<double> default_d1_grid()
    {
        std::vector<double> d;
        const double lo = 5.0, hi = 200.0;
        const int points = 20;
        for (int i = 0; i < points; i++)
            d.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1)));
        return d;
    }

    ScenarioConfig parse_config(const std::string &json_text)
    {
        ordered_json j;
        try
        {
            j = ordered_json::parse(json_text);
        }
        catch (const std::exception &e)
        {
            throw config_error(std::string("config: invalid JSON: ") + e.what());
        }
        require(j.is_object(), "config: top level must be an object");

        static const std::vector<std::string> known = {
            "scenario", "seed", "format", "side", "distance", "theta_grid", "n_grid",
            "fig5_n", "d1_grid", "d2_offset", "channel", "rician_k", "normalization",
            "quadrature_order", "tx", "rx", "ues", "capacity"};
        for (const auto &item : j.items())
            require(std::find(known.begin(), known.end(), item.key()) != known.end(),
                    "config: unknown key '" + item.key() + "'");

        ScenarioConfig c;
        require(j.contains("scenario"), "config: 'scenario' is required");
        const std::string kind = j["scenario"].get<std::string>();
        if (kind == "fig4")
            c.kind = ScenarioConfig::Kind::fig4;
        else if (kind == "fig5")
            c.kind = ScenarioConfig::Kind::fig5;
        else if (kind == "custom")
            c.kind = ScenarioConfig::Kind::custom;
        else
            throw config_error("config: scenario must be fig4, fig5 or custom");

        c.seed = j.value("seed", std::uint64_t{1});
        if (j.contains("format"))
        {
            const std::string f = j["format"].get<std::string>();
            require(f == "csv" || f == "json", "config: format must be csv or json");
            c.format = (f == "json") ? OutputFormat::json : OutputFormat::csv;
        }

        c.side = j.value("side", 10.0);
        c.dist = j.value("distance", 7.0);
        c.theta_grid = j.contains("theta_grid")
                           ? j["theta_grid"].get<std::vector<double>>()
                           : default_theta_grid();
        c.n_grid = j.contains("n_grid") ? j["n_grid"].get<std::vector<int>>() : default_n_grid();
        c.fig5_n = j.value("fig5_n", 20);
        c.d1_grid = j.contains("d1_grid") ? j["d1_grid"].get<std::vector<double>>()
                                          : default_d1_grid();
        c.d2_offset = j.value("d2_offset", 2.0);

        if (j.contains("channel"))
        {
            const std::string ch = j["channel"].get<std::string>();
            if (ch == "los_dyadic")
                c.channel = ChannelKind::los_dyadic;
            else if (ch == "los_scalar")
                c.channel = ChannelKind::los_scalar;
            else if (ch == "nlos")
                c.channel = ChannelKind::nlos;
            else if (ch == "hybrid")
                c.channel = ChannelKind::hybrid;
            else
                throw config_error("config: channel must be los_dyadic, los_scalar, nlos or hybrid");
        }
        c.rician_k = j.value("rician_k", 1.0);
        if (j.contains("normalization"))
        {
            const std::string m = j["normalization"].get<std::string>();
            require(m == "unit-power" || m == "raw",
                    "config: normalization must be unit-power or raw");
            c.normalization = (m == "raw") ? HybridSpec::Normalization::raw
                                           : HybridSpec::Normalization::unit_power;
        }
        c.quadrature_order = j.value("quadrature_order", 3);

        if (j.contains("tx"))
        {
            ElementKind kind_out;
            double side_out;
            c.tx_spec = parse_surface(j["tx"], "config.tx", kind_out, side_out);
            c.element_kind = kind_out;
            c.patch_side = side_out;
        }
        if (j.contains("rx"))
        {
            ElementKind kind_out;
            double side_out;
            c.rx_spec = parse_surface(j["rx"], "config.rx", kind_out, side_out);
        }
        if (j.contains("ues"))
        {
            require(j["ues"].is_array() && !j["ues"].empty(), "config.ues: non-empty array required");
            for (const auto &p : j["ues"])
                c.ue_positions.push_back(parse_point(p, "config.ues"));
        }
        if (j.contains("capacity"))
        {
            const auto &cap = j["capacity"];
            require(cap.is_object() && cap.contains("total_power"),
                    "config.capacity: needs total_power");
            c.capacity_total_power = cap["total_power"].get<double>();
            c.capacity_noise_power = cap.value("noise_power", 1.0);
        }
        return c;
    }

    ScenarioConfig load_config(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw config_error("config: cannot read '" + path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_config(buf.str());
    }

    std::vector<ResultRow> run_fig4(const ScenarioConfig &config)
    {
        require(config.kind == ScenarioConfig::Kind::fig4, "run_fig4: wrong scenario kind");
        require(!config.theta_grid.empty(), "run_fig4: empty theta grid");
        require(!config.n_grid.empty(), "run_fig4: empty N grid");
        require(config.side > 0.0, "run_fig4: side must be positive");
        require(config.dist > 0.0, "run_fig4: distance must be positive");
        for (int n : config.n_grid)
            require(n >= 1, "run_fig4: N must be >= 1");

        std::vector<double> thetas = config.theta_grid;
        std::vector<int> ns = config.n_grid;
        std::sort(thetas.begin(), thetas.end());
        std::sort(ns.begin(), ns.end());

        const WaveParams w;
        const Point3 rx_center{0.0, 0.0, config.dist};
        const Point3 rotation_axis{1.0, 0.0, 0.0};

        std::vector<ResultRow> rows;
        for (const double theta : thetas)
            for (const int n : ns)
            {
                const double t0 = now_s();
                const ArrayGeometry tx = square_surface(n, config.side, {0.0, 0.0, 0.0});
                ArrayGeometry rx = square_surface(n, config.side, rx_center);
                rx = rotate_surface(rx, rotation_axis, theta);
                const ChannelMatrix h = los_channel_dyadic(tx, rx, w, config.quadrature_order);
                rows.push_back(measured_row("fig4", theta, n, std::nullopt, h,
                                            config.capacity_total_power,
                                            config.capacity_noise_power, t0));
            }
        return rows;
    }

    std::vector<ResultRow> run_fig5(const ScenarioConfig &config)
    {
        require(config.kind == ScenarioConfig::Kind::fig5, "run_fig5: wrong scenario kind");
        require(!config.d1_grid.empty(), "run_fig5: empty d1 grid");
        require(config.fig5_n >= 1, "run_fig5: surface size must be >= 1");
        require(config.side > 0.0, "run_fig5: side must be positive");
        require(config.d2_offset > 0.0, "run_fig5: d2 offset must be positive");
        for (double d1 : config.d1_grid)
            require(d1 > 0.0, "run_fig5: d1 must be positive");

        std::vector<double> d1s = config.d1_grid;
        std::sort(d1s.begin(), d1s.end());

        const WaveParams w;
        const ArrayGeometry tx = square_surface(config.fig5_n, config.side, {0.0, 0.0, 0.0});

        std::vector<ResultRow> rows;
        for (const double d1 : d1s)
        {
            const Point3 ue1{0.0, 0.0, d1};
            const Point3 ue2{0.0, 0.0, d1 + config.d2_offset};

            double t0 = now_s();
            ChannelMatrix h = los_channel_dyadic(tx, ue_points({ue1, ue2}), w,
                                                 config.quadrature_order);
            rows.push_back(measured_row("fig5-two-ue", std::nullopt, std::nullopt, d1, h,
                                        config.capacity_total_power, config.capacity_noise_power,
                                        t0));

            t0 = now_s();
            h = los_channel_dyadic(tx, ue_points({ue1}), w, config.quadrature_order);
            rows.push_back(measured_row("fig5-ue1", std::nullopt, std::nullopt, d1, h,
                                        config.capacity_total_power, config.capacity_noise_power,
                                        t0));

            t0 = now_s();
            h = los_channel_dyadic(tx, ue_points({ue2}), w, config.quadrature_order);
            rows.push_back(measured_row("fig5-ue2", std::nullopt, std::nullopt, d1, h,
                                        config.capacity_total_power, config.capacity_noise_power,
                                        t0));
        }
        return rows;
    }

    std::vector<ResultRow> run_custom(const ScenarioConfig &config)
    {
        require(config.kind == ScenarioConfig::Kind::custom, "run_custom: wrong scenario kind");
        require(config.tx_spec.has_value(), "run_custom: transmitter spec required");
        require(config.rx_spec.has_value() || !config.ue_positions.empty(),
                "run_custom: receiver spec or UE list required");

        const WaveParams w;
        const ArrayGeometry tx =
            build_upa(*config.tx_spec, config.element_kind, config.patch_side);
        const ArrayGeometry rx = config.rx_spec.has_value() ? build_upa(*config.rx_spec)
                                                            : ue_points(config.ue_positions);

        const double t0 = now_s();
        ChannelMatrix h;
        switch (config.channel)
        {
        case ChannelKind::los_dyadic:
            h = los_channel_dyadic(tx, rx, w, config.quadrature_order);
            break;
        case ChannelKind::los_scalar:
            h = los_channel_scalar(tx, rx, w, config.quadrature_order);
            break;
        case ChannelKind::nlos:
        case ChannelKind::hybrid:
        {
            const auto [tx_lx, tx_ly] = planar_extent(tx);
            const auto [rx_lx, rx_ly] = planar_extent(rx);
            const ScatteringSpectrum spectrum =
                ScatteringSpectrum::isotropic(rx_lx, rx_ly, tx_lx, tx_ly, w);
            const ChannelMatrix nlos = nlos_fourier_planewave(tx, rx, spectrum, config.seed, w);
            if (config.channel == ChannelKind::nlos)
                h = nlos;
            else
            {
                const ChannelMatrix los =
                    los_channel_scalar(tx, rx, w, config.quadrature_order);
                h = hybrid_channel(los, nlos, {config.rician_k, config.normalization});
            }
            break;
        }
        }

        std::vector<ResultRow> rows;
        rows.push_back(measured_row("custom", std::nullopt, std::nullopt, std::nullopt, h,
                                    config.capacity_total_power, config.capacity_noise_power,
                                    t0));
        return rows;
    }

    std::vector<ResultRow> run_scenario(const ScenarioConfig &config)
    {
        switch (config.kind)
        {
        case ScenarioConfig::Kind::fig4:
            return run_fig4(config);
        case ScenarioConfig::Kind::fig5:
            return run_fig5(config);
        case ScenarioConfig::Kind::custom:
            return run_custom(config);
        }
        throw config_error("run_scenario: unknown scenario kind");
    }

    std::string to_csv(const std::vector<ResultRow> &rows)
    {
        const bool with_capacity =
            std::any_of(rows.begin(), rows.end(),
                        [](const ResultRow &r) { return r.capacity_bits.has_value(); });

        std::string out = "scenario,theta_rad,N,d1_lambda,edof,rank,wall_s";
        if (with_capacity)
            out += ",capacity_bits";
        out += "\n";
        for (const auto &r : rows)
        {
            out += r.scenario;
            out += ",";
            out += r.theta_rad ? fmt_number(*r.theta_rad) : "";
            out += ",";
            out += r.n ? std::to_string(*r.n) : "";
            out += ",";
            out += r.d1_lambda ? fmt_number(*r.d1_lambda) : "";
            out += ",";
            out += fmt_number(r.edof);
            out += ",";
            out += std::to_string(r.rank);
            out += ",";
            out += fmt_number(r.wall_s);
            if (with_capacity)
            {
                out += ",";
                out += r.capacity_bits ? fmt_number(*r.capacity_bits) : "";
            }
            out += "\n";
        }
        return out;
    }

    std::string to_json(const std::vector<ResultRow> &rows)
    {
        const bool with_capacity =
            std::any_of(rows.begin(), rows.end(),
                        [](const ResultRow &r) { return r.capacity_bits.has_value(); });

        ordered_json arr = ordered_json::array();
        for (const auto &r : rows)
        {
            ordered_json o;
            o["scenario"] = r.scenario;
            o["theta_rad"] = r.theta_rad ? ordered_json(*r.theta_rad) : ordered_json(nullptr);
            o["N"] = r.n ? ordered_json(*r.n) : ordered_json(nullptr);
            o["d1_lambda"] = r.d1_lambda ? ordered_json(*r.d1_lambda) : ordered_json(nullptr);
            o["edof"] = r.edof;
            o["rank"] = r.rank;
            o["wall_s"] = r.wall_s;
            if (with_capacity)
                o["capacity_bits"] =
                    r.capacity_bits ? ordered_json(*r.capacity_bits) : ordered_json(nullptr);
            arr.push_back(std::move(o));
        }
        return arr.dump(2) + "\n";
    }

    void emit(const std::vector<ResultRow> &rows, OutputFormat format, const std::string &path)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw std::runtime_error("emit: cannot open '" + path + "' for writing");
        out << (format == OutputFormat::csv ? to_csv(rows) : to_json(rows));
        if (!out)
            throw std::runtime_error("emit: write failed for '" + path + "'");
    }
}
