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

#include "xlmimo/em.hpp"

#include <stdexcept>

#include "xlmimo/errors.hpp"

namespace xlmimo
{
    namespace
    {
        double separation_or_throw(const Point3 &r, const Point3 &s, const char *who)
        {
            const double d = distance(r, s);
            if (!(d > 0.0))
                throw singularity_error(std::string(who) + ": coincident source and observation points");
            return d;
        }

        Point3 to_global(const Point3 &center, const arma::mat33 &frame, const Point3 &local)
        {
            return {center.x + frame(0, 0) * local.x + frame(0, 1) * local.y + frame(0, 2) * local.z,
                    center.y + frame(1, 0) * local.x + frame(1, 1) * local.y + frame(1, 2) * local.z,
                    center.z + frame(2, 0) * local.x + frame(2, 1) * local.y + frame(2, 2) * local.z};
        }
    }

    const char *to_string(FieldRegion region)
    {
        switch (region)
        {
        case FieldRegion::radiative_near_field:
            return "radiative-near-field";
        case FieldRegion::fresnel:
            return "fresnel";
        case FieldRegion::far_field:
            return "far-field";
        }
        return "?";
    }

    std::complex<double> scalar_green(const Point3 &r, const Point3 &s, const WaveParams &w)
    {
        const double R = separation_or_throw(r, s, "scalar_green");
        const double k0 = w.wavenumber();
        return std::polar(1.0 / (4.0 * arma::datum::pi * R), -k0 * R);
    }

    arma::cx_mat33 dyadic_green(const Point3 &r, const Point3 &s, const WaveParams &w)
    {
        const double R = separation_or_throw(r, s, "dyadic_green");
        const double k0 = w.wavenumber();
        const double kr = k0 * R;
        const std::complex<double> g = std::polar(1.0 / (4.0 * arma::datum::pi * R), -kr);
        const std::complex<double> j(0.0, 1.0);
        const std::complex<double> a = 1.0 - j / kr - 1.0 / (kr * kr);
        const std::complex<double> b = 1.0 - 3.0 * j / kr - 3.0 / (kr * kr);

        const Point3 u = (1.0 / R) * (r - s);
        const double rr[3] = {u.x, u.y, u.z};

        arma::cx_mat33 out;
        for (int i = 0; i < 3; i++)
            for (int k = 0; k < 3; k++)
            {
                std::complex<double> v = -b * rr[i] * rr[k];
                if (i == k)
                    v += a;
                out(i, k) = g * v;
            }
        return out;
    }

    double rayleigh_distance(double aperture, const WaveParams &w)
    {
        if (!(aperture > 0.0))
            throw std::invalid_argument("rayleigh_distance: aperture must be positive");
        return 2.0 * aperture * aperture / w.lambda0;
    }

    double fresnel_distance(double aperture, const WaveParams &w)
    {
        if (!(aperture > 0.0))
            throw std::invalid_argument("fresnel_distance: aperture must be positive");
        return 0.62 * std::sqrt(aperture * aperture * aperture / w.lambda0);
    }

    FieldRegion classify_region(double aperture, double dist, const WaveParams &w)
    {
        if (!(aperture > 0.0) || !(dist > 0.0))
            throw std::invalid_argument("classify_region: aperture and distance must be positive");
        if (dist >= rayleigh_distance(aperture, w))
            return FieldRegion::far_field;
        if (dist >= fresnel_distance(aperture, w))
            return FieldRegion::fresnel;
        return FieldRegion::radiative_near_field;
    }

    std::complex<double> response_model(const Point3 &tx, const Point3 &rx_element,
                                        const Point3 &rx_center, FieldRegion region,
                                        const WaveParams &w)
    {
        const double k0 = w.wavenumber();
        const double d_center = separation_or_throw(rx_center, tx, "response_model");

        switch (region)
        {
        case FieldRegion::radiative_near_field:
            return scalar_green(rx_element, tx, w);

        case FieldRegion::fresnel:
        {
            const double d_exact = separation_or_throw(rx_element, tx, "response_model");
            return std::polar(1.0 / (4.0 * arma::datum::pi * d_center), -k0 * d_exact);
        }

        case FieldRegion::far_field:
        {
            const Point3 incident = (1.0 / d_center) * (rx_center - tx);
            const double planar = dot(incident, rx_element - rx_center);
            return std::polar(1.0 / (4.0 * arma::datum::pi * d_center), -k0 * (d_center + planar));
        }
        }
        throw std::invalid_argument("response_model: unknown region");
    }

    std::complex<double> scalar_green_avg(const Point3 &r, const std::vector<Point3> &r_nodes,
                                          const arma::mat33 &r_frame, const Point3 &s,
                                          const std::vector<Point3> &s_nodes,
                                          const arma::mat33 &s_frame, const WaveParams &w)
    {
        std::complex<double> acc(0.0, 0.0);
        for (const auto &rn : r_nodes)
        {
            const Point3 rp = to_global(r, r_frame, rn);
            for (const auto &sn : s_nodes)
                acc += scalar_green(rp, to_global(s, s_frame, sn), w);
        }
        return acc / static_cast<double>(r_nodes.size() * s_nodes.size());
    }

    arma::cx_mat33 dyadic_green_avg(const Point3 &r, const std::vector<Point3> &r_nodes,
                                    const arma::mat33 &r_frame, const Point3 &s,
                                    const std::vector<Point3> &s_nodes,
                                    const arma::mat33 &s_frame, const WaveParams &w)
    {
        arma::cx_mat33 acc;
        acc.zeros();
        for (const auto &rn : r_nodes)
        {
            const Point3 rp = to_global(r, r_frame, rn);
            for (const auto &sn : s_nodes)
                acc += dyadic_green(rp, to_global(s, s_frame, sn), w);
        }
        return acc / static_cast<double>(r_nodes.size() * s_nodes.size());
    }
}
